#pragma once

// Quasi-static shape functions of a straight rod element, expanded through
// third order in the nodal displacements.
//
// Fields are x, y, z~ = z - sigma and varphi. Each field is stored per
// order as a jet whose coefficients are polynomials in sigma. In a numeric
// solution the jet has one variable (the amplitude parameter eps, with the
// nodal values folded into the coefficients); in a symbolic solution it has
// twelve variables, the element DOFs
//   X_a Y_a Z_a Phi_xa Phi_ya Phi_za X_b Y_b Z_b Phi_xb Phi_yb Phi_zb.

#include <array>
#include <string>
#include <vector>

#include "cosserat/jet.hpp"
#include "cosserat/poly.hpp"
#include "cosserat/section.hpp"

namespace cosserat {

enum ShapeField { kFieldX = 0, kFieldY = 1, kFieldZ = 2, kFieldVarphi = 3 };
inline constexpr int kElementDofs = 12;

struct NodalDisplacement {
    double X = 0.0;
    double Y = 0.0;
    double Z = 0.0;
    double PhiX = 0.0;
    double PhiY = 0.0;
    double PhiZ = 0.0;
};

/// Names of the twelve element DOFs in jet-variable order.
const std::array<std::string, kElementDofs>& element_dof_names();

using PolyJet = Jet<Poly>;
using FieldSet = std::array<PolyJet, 4>;

struct ShapeSolution {
    double l = 0.0;
    int order = 0;
    BasisPtr basis;
    /// parts[f][k-1] holds the homogeneous order-k part of field f.
    std::array<std::array<PolyJet, 3>, 4> parts;
    /// Ansatz degree that succeeded at each order.
    std::array<int, 3> ansatz_degree{};

    bool symbolic() const { return basis && basis->nvars() == kElementDofs; }
    /// Order-k polynomial of a numeric solution.
    Poly poly(int field, int k) const;
    /// Sum of the stored orders up to max_order (z excludes the sigma term).
    PolyJet total(int field, int max_order = 3) const;
    /// Numeric solution obtained by substituting q into a symbolic one.
    ShapeSolution specialize(const std::array<double, kElementDofs>& q) const;
};

struct ShapeValue {
    std::array<double, 4> value{};       // x, y, z (with sigma), varphi
    std::array<double, 4> derivative{};  // d/dsigma of the same
};

/// Residuals of the static equations for the given fields: the three
/// components of the contact-force derivative and the axial torque balance.
std::array<PolyJet, 4> static_residual(const FieldSet& fields, const SectionProperties& sec);

/// Boundary residuals, 12 rows ordered x(0), x(l), nu1(0), nu1(l), y(0),
/// y(l), nu2(0), nu2(l), z~(0), z~(l), varphi(0), varphi(l), each the
/// field-side value minus the prescribed nodal value.
std::vector<Jet<double>> boundary_residual(const FieldSet& fields, double l,
                                           const std::array<Jet<double>, kElementDofs>& q);

ShapeSolution solve_shape(const NodalDisplacement& qa, const NodalDisplacement& qb,
                          const SectionProperties& sec, double l, int order);

ShapeSolution jet_shape(const SectionProperties& sec, double l, int order);

/// Values and sigma-derivatives of a numeric solution at sigma in [0, l].
ShapeValue eval_shape(const ShapeSolution& sh, double sigma);

/// Sigma-derivative applied coefficient-wise.
PolyJet dsigma(const PolyJet& a);

}  // namespace cosserat
