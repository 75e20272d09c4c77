#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "cosserat/jet.hpp"
#include "cosserat/section.hpp"
#include "cosserat/shapefn.hpp"
#include "cosserat/so3.hpp"

namespace cosserat {

using Mat12 = Eigen::Matrix<double, kElementDofs, kElementDofs>;
using Vec12 = Eigen::Matrix<double, kElementDofs, 1>;

struct GaussRule {
    std::vector<double> nodes;    // on [-1, 1]
    std::vector<double> weights;
};

/// Gauss-Legendre rule with n points (Golub-Welsch).
GaussRule gauss_legendre(int n);

struct BuildOptions {
    int quadrature_points = 8;
    /// false: order-1 shapes only, giving M and K but no Q, C.
    bool nonlinear = true;
};

/// One monomial of the nonlinear force: g[row] += c * q[v0] * q[v1] (* q[v2]).
struct ForceTerm {
    int row = 0;
    double c = 0.0;
    std::array<std::int8_t, 3> v{-1, -1, -1};
};

struct ElementOperators {
    double l = 0.0;
    SectionProperties section;
    Mat12 M = Mat12::Zero();
    Mat12 K = Mat12::Zero();
    /// Q[(i*12 + j)*12 + k], symmetric in (j, k).
    std::vector<double> Q;
    /// C[((i*12 + j)*12 + k)*12 + m], symmetric in (j, k, m).
    std::vector<double> C;
    /// g_i as jets (quadratic and cubic parts only).
    std::array<Jet<double>, kElementDofs> g;
    /// Element strain energy as a polynomial in q (degree <= 4).
    Jet<double> strain_energy;
    /// Element kinetic energy as a quadratic form in the nodal rates.
    Jet<double> kinetic_energy;
    /// Quadratic terms first, then cubic ones.
    std::vector<ForceTerm> g_terms;
    std::size_t g_quadratic_count = 0;
    std::vector<std::pair<double, std::array<std::int8_t, 4>>> potential_terms;

    bool nonlinear() const { return !g_terms.empty() || !Q.empty(); }
    double Q_at(int i, int j, int k) const;
    double C_at(int i, int j, int k, int m) const;
};

/// Kinetic energy density in the nodal rates (order-1 velocity fields).
/// The symbolic shape solution supplies the order-1 fields; the result
/// lives in `basis` (12 variables, degree >= 2).
Jet<double> kinetic_energy_density(const ShapeSolution& sh, const SectionProperties& sec, double sigma,
                                   const BasisPtr& basis);

/// Strain energy density as a polynomial in q, truncated at basis degree.
Jet<double> strain_energy_density(const ShapeSolution& sh, const SectionProperties& sec, double sigma,
                                  const BasisPtr& basis);

ElementOperators build_element(const SectionProperties& sec, double l, const BuildOptions& opts = {});

/// Quadratic plus cubic internal force g(q).
Vec12 nonlinear_force(const ElementOperators& ops, const Vec12& q);
/// Same force from the Q and C tensors.
Vec12 nonlinear_force_tensor(const ElementOperators& ops, const Vec12& q);
/// Jacobian dg/dq.
Mat12 nonlinear_jacobian(const ElementOperators& ops, const Vec12& q);
/// Cubic plus quartic part of the strain energy; its gradient is g.
double nonlinear_potential(const ElementOperators& ops, const Vec12& q);

using LoadField = std::function<Vec3(double sigma)>;

/// Work-equivalent nodal loads of distributed force xi and torque eta
/// (per unit length, inertial components), using order-1 sensitivities.
Vec12 equivalent_nodal_loads(const ShapeSolution& sh, const LoadField& xi, const LoadField& eta,
                             int quadrature_points = 8);

}  // namespace cosserat
