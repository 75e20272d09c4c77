#pragma once

// Closed-form operators of a single clamped-free element (node a fixed),
// transcribed from the published tables, and their comparison against the
// quadrature-built element.
//
// Cantilever DOF order: X_b Y_b Z_b Phi_xb Phi_yb Phi_zb.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "cosserat/element.hpp"

namespace cosserat {

using Mat6 = Eigen::Matrix<double, 6, 6>;
using Monomial6 = std::array<std::uint8_t, 6>;

struct OracleCoefficient {
    int row = 0;          // 1..6
    int term = 0;         // position in the printed row, 1-based
    std::string label;    // coefficient symbol printed at that position
    Monomial6 monomial{};
    double value = 0.0;   // NaN when the symbol is never defined
    std::string flag;     // empty unless the printed entry is defective
};

struct CantileverOracle {
    Mat6 M6 = Mat6::Zero();
    Mat6 K6 = Mat6::Zero();
    std::vector<OracleCoefficient> g;
    /// Every defined symbol "i,j" with all printed definitions.
    std::map<std::string, std::vector<double>> symbols;
};

CantileverOracle appendix_oracle(const SectionProperties& sec, double l);

struct ComparisonRow {
    std::string name;
    double computed = 0.0;
    double oracle = 0.0;
    double rel_err = 0.0;
    std::string status;  // ok | fail | flagged | unlisted
    std::string note;
};

/// Compares the node-b block of a full element against the oracle.
std::vector<ComparisonRow> compare_with_appendix(const ElementOperators& ops, const CantileverOracle& oracle,
                                                 double tol_matrix = 1e-8, double tol_g = 1e-6);

/// Coefficient of a cantilever monomial in g_row of the full element.
double cantilever_coefficient(const ElementOperators& ops, int row, const Monomial6& m);

std::string monomial6_name(const Monomial6& m);

}  // namespace cosserat
