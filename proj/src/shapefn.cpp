#include "cosserat/shapefn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "cosserat/errors.hpp"
#include "cosserat/kinematics.hpp"

namespace cosserat {

namespace {

constexpr int kMaxAnsatzDegree = 11;
constexpr double kSnap = 1e-13;
constexpr double kConsistency = 1e-9;

Jet<double> at(const PolyJet& a, double sigma) {
    return a.map([sigma](const Poly& p) { return p(sigma); });
}

int max_sigma_degree(const PolyJet& a) {
    int d = -1;
    for (const auto& t : a.terms()) d = std::max(d, t.second.degree());
    return d;
}

// Probe jets: one variable, degree one, so the eps-coefficient of any
// residual is the linearized operator applied to the probe field.
struct Probe {
    BasisPtr basis = MonomialBasis::get(1, 1);
    std::uint32_t eps = static_cast<std::uint32_t>(MonomialBasis::get(1, 1)->variable(0));
};

}  // namespace

const std::array<std::string, kElementDofs>& element_dof_names() {
    static const std::array<std::string, kElementDofs> names{
        "X_a", "Y_a", "Z_a", "Phi_xa", "Phi_ya", "Phi_za",
        "X_b", "Y_b", "Z_b", "Phi_xb", "Phi_yb", "Phi_zb"};
    return names;
}

PolyJet dsigma(const PolyJet& a) {
    return a.map([](const Poly& p) { return p.derivative(); });
}

std::array<PolyJet, 4> static_residual(const FieldSet& f, const SectionProperties& sec) {
    PolyJet dx = dsigma(f[kFieldX]);
    PolyJet dy = dsigma(f[kFieldY]);
    PolyJet dz = dsigma(f[kFieldZ]);
    dz.add_constant(Poly(1.0));
    const PolyJet v3 = sqrt(dx * dx + dy * dy + dz * dz);
    const PolyJet inv = recip(v3);
    const DirectorStateT<PolyJet> st{dx * inv, dy * inv, dz * inv, f[kFieldVarphi]};
    const FrameT<PolyJet> d = frame_cubic(st);

    Triple<PolyJet> u;
    for (int i = 0; i < 3; ++i) {
        const Triple<PolyJet>& di = d[i];
        const Triple<PolyJet> dd{dsigma(di[0]), dsigma(di[1]), dsigma(di[2])};
        const Triple<PolyJet> c = cross(di, dd);
        for (std::size_t k = 0; k < 3; ++k) u[k] = (i == 0) ? c[k] : u[k] + c[k];
    }
    const PolyJet u1 = dot(u, d.d1) * 0.5;
    const PolyJet u2 = dot(u, d.d2) * 0.5;
    const PolyJet u3 = dot(u, d.d3) * 0.5;
    const PolyJet m1 = u1 * sec.J11;
    const PolyJet m2 = u2 * sec.J22;
    const PolyJet m3 = u3 * sec.J33;
    const PolyJet dm1 = dsigma(m1);
    const PolyJet dm2 = dsigma(m2);
    const PolyJet dm3 = dsigma(m3);

    const PolyJet n1 = (u1 * m3 - dm2 - u3 * m1) * inv;
    const PolyJet n2 = (dm1 - u3 * m2 + u2 * m3) * inv;
    const PolyJet n3 = (v3 - 1.0) * sec.K33;

    std::array<PolyJet, 4> r;
    for (std::size_t c = 0; c < 3; ++c) r[c] = dsigma(n1 * d.d1[c] + n2 * d.d2[c] + n3 * d.d3[c]);
    r[3] = dm3 + u1 * m2 - u2 * m1;
    return r;
}

std::vector<Jet<double>> boundary_residual(const FieldSet& f, double l,
                                           const std::array<Jet<double>, kElementDofs>& q) {
    PolyJet dx = dsigma(f[kFieldX]);
    PolyJet dy = dsigma(f[kFieldY]);
    PolyJet dz = dsigma(f[kFieldZ]);
    dz.add_constant(Poly(1.0));

    auto tangent = [&](double s) {
        const Jet<double> a = at(dx, s);
        const Jet<double> b = at(dy, s);
        const Jet<double> c = at(dz, s);
        const Jet<double> inv = recip(sqrt(a * a + b * b + c * c));
        return std::make_pair(a * inv, b * inv);
    };
    const auto [nu1a, nu2a] = tangent(0.0);
    const auto [nu1b, nu2b] = tangent(l);
    const auto ta = nu_from_phi(RotParamsT<Jet<double>>{q[3], q[4], q[5]});
    const auto tb = nu_from_phi(RotParamsT<Jet<double>>{q[9], q[10], q[11]});

    return {
        at(f[kFieldX], 0.0) - q[0], at(f[kFieldX], l) - q[6],
        nu1a - ta.nu1, nu1b - tb.nu1,
        at(f[kFieldY], 0.0) - q[1], at(f[kFieldY], l) - q[7],
        nu2a - ta.nu2, nu2b - tb.nu2,
        at(f[kFieldZ], 0.0) - q[2], at(f[kFieldZ], l) - q[8],
        at(f[kFieldVarphi], 0.0) - ta.varphi, at(f[kFieldVarphi], l) - tb.varphi,
    };
}

namespace {

ShapeSolution solve_generic(const BasisPtr& basis, const std::array<Jet<double>, kElementDofs>& q,
                            const SectionProperties& sec, double l, int order) {
    if (!(l > 0.0)) throw ConfigurationError("element length must be positive");
    if (order < 1 || order > 3) throw UsageError("shape order must be 1, 2 or 3");

    ShapeSolution sol;
    sol.l = l;
    sol.order = order;
    sol.basis = basis;

    FieldSet F;
    for (auto& f : F) f = PolyJet(basis);
    const Probe probe;

    for (int k = 1; k <= order; ++k) {
        std::array<PolyJet, 4> R = static_residual(F, sec);
        for (auto& r : R) r = r.homogeneous(k);
        std::vector<Jet<double>> bc = boundary_residual(F, l, q);
        for (auto& b : bc) b = b.homogeneous(k);

        const std::size_t m0 = basis->degree_begin(k);
        const std::size_t m1 = basis->degree_begin(k + 1);
        const Eigen::Index nmon = static_cast<Eigen::Index>(m1 - m0);

        int forcing_deg = 0;
        for (const auto& r : R) forcing_deg = std::max(forcing_deg, max_sigma_degree(r));

        bool solved = false;
        double worst = 0.0;
        for (int D = 2 * k + 1; D <= kMaxAnsatzDegree && !solved; D += 2) {
            const int rmax = std::max(D, forcing_deg);
            const Eigen::Index neq = 4 * (rmax + 1);
            const Eigen::Index rows = neq + 12;
            const Eigen::Index cols = 4 * (D + 1);
            Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
            Eigen::MatrixXd B = Eigen::MatrixXd::Zero(rows, nmon);

            std::array<Jet<double>, kElementDofs> qp;
            for (auto& v : qp) v = Jet<double>(probe.basis);
            for (int f = 0; f < 4; ++f) {
                for (int p = 0; p <= D; ++p) {
                    FieldSet G;
                    for (auto& g : G) g = PolyJet(probe.basis);
                    G[static_cast<std::size_t>(f)] =
                        PolyJet::variable(probe.basis, 0, Poly::monomial(p, std::pow(l, -p)));
                    const auto res = static_residual(G, sec);
                    const auto bres = boundary_residual(G, l, qp);
                    const Eigen::Index col = f * (D + 1) + p;
                    for (int e = 0; e < 4; ++e) {
                        const Poly c = res[static_cast<std::size_t>(e)].coeff(std::size_t{probe.eps});
                        for (int r = 0; r <= rmax; ++r) A(e * (rmax + 1) + r, col) = c.coeff(r);
                    }
                    for (int b = 0; b < 12; ++b) A(neq + b, col) = bres[static_cast<std::size_t>(b)].coeff(probe.eps);
                }
            }
            for (int e = 0; e < 4; ++e) {
                for (const auto& [idx, c] : R[static_cast<std::size_t>(e)].terms()) {
                    for (int r = 0; r <= c.degree(); ++r) {
                        if (r > rmax) break;
                        B(e * (rmax + 1) + r, static_cast<Eigen::Index>(idx - m0)) = -c.coeff(r);
                    }
                }
            }
            for (int b = 0; b < 12; ++b) {
                for (const auto& [idx, c] : bc[static_cast<std::size_t>(b)].terms()) {
                    B(neq + b, static_cast<Eigen::Index>(idx - m0)) = -c;
                }
            }

            // Row equilibration; rows with no unknowns must have zero data.
            std::vector<Eigen::Index> keep;
            worst = 0.0;
            for (Eigen::Index r = 0; r < rows; ++r) {
                const double s = A.row(r).cwiseAbs().maxCoeff();
                if (s == 0.0) {
                    worst = std::max(worst, B.row(r).cwiseAbs().maxCoeff());
                    continue;
                }
                A.row(r) /= s;
                B.row(r) /= s;
                keep.push_back(r);
            }
            const double bscale = std::max(B.cwiseAbs().maxCoeff(), 1e-300);
            if (worst > kConsistency * bscale) continue;

            Eigen::MatrixXd As(static_cast<Eigen::Index>(keep.size()), cols);
            Eigen::MatrixXd Bs(static_cast<Eigen::Index>(keep.size()), nmon);
            for (std::size_t i = 0; i < keep.size(); ++i) {
                As.row(static_cast<Eigen::Index>(i)) = A.row(keep[i]);
                Bs.row(static_cast<Eigen::Index>(i)) = B.row(keep[i]);
            }
            const Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(As);
            const Eigen::MatrixXd X = cod.solve(Bs);
            worst = (As * X - Bs).cwiseAbs().maxCoeff();
            if (worst > kConsistency * bscale) continue;

            for (int f = 0; f < 4; ++f) {
                const auto block = X.middleRows(f * (D + 1), D + 1);
                const double cmax = block.cwiseAbs().maxCoeff();
                std::vector<PolyJet::Term> terms;
                for (Eigen::Index m = 0; m < nmon; ++m) {
                    std::vector<double> c(static_cast<std::size_t>(D) + 1, 0.0);
                    bool any = false;
                    for (int p = 0; p <= D; ++p) {
                        const double v = block(p, m);
                        if (std::abs(v) <= kSnap * cmax) continue;
                        c[static_cast<std::size_t>(p)] = v * std::pow(l, -p);
                        any = true;
                    }
                    if (any) terms.emplace_back(static_cast<std::uint32_t>(m0 + static_cast<std::size_t>(m)), Poly(std::move(c)));
                }
                PolyJet part = PolyJet::from_terms(basis, std::move(terms));
                sol.parts[static_cast<std::size_t>(f)][static_cast<std::size_t>(k - 1)] = part;
                F[static_cast<std::size_t>(f)] += part;
            }
            sol.ansatz_degree[static_cast<std::size_t>(k - 1)] = D;
            solved = true;
        }
        if (!solved) {
            std::ostringstream msg;
            msg << "shape solve failed at order " << k << ": residual " << worst
                << " remains after ansatz degree " << kMaxAnsatzDegree;
            throw ShapeSolveError(msg.str());
        }
    }
    for (int f = 0; f < 4; ++f) {
        for (int k = order + 1; k <= 3; ++k) sol.parts[static_cast<std::size_t>(f)][static_cast<std::size_t>(k - 1)] = PolyJet(basis);
    }
    return sol;
}

}  // namespace

ShapeSolution solve_shape(const NodalDisplacement& qa, const NodalDisplacement& qb,
                          const SectionProperties& sec, double l, int order) {
    const BasisPtr basis = MonomialBasis::get(1, std::clamp(order, 1, 3));
    const std::array<double, kElementDofs> v{qa.X, qa.Y, qa.Z, qa.PhiX, qa.PhiY, qa.PhiZ,
                                             qb.X, qb.Y, qb.Z, qb.PhiX, qb.PhiY, qb.PhiZ};
    std::array<Jet<double>, kElementDofs> q;
    for (std::size_t i = 0; i < q.size(); ++i) q[i] = Jet<double>::variable(basis, 0, v[i]);
    return solve_generic(basis, q, sec, l, order);
}

ShapeSolution jet_shape(const SectionProperties& sec, double l, int order) {
    const BasisPtr basis = MonomialBasis::get(kElementDofs, std::clamp(order, 1, 3));
    std::array<Jet<double>, kElementDofs> q;
    for (int i = 0; i < kElementDofs; ++i) q[static_cast<std::size_t>(i)] = Jet<double>::variable(basis, i);
    return solve_generic(basis, q, sec, l, order);
}

Poly ShapeSolution::poly(int field, int k) const {
    if (symbolic()) throw UsageError("poly() needs a numeric shape solution");
    if (k < 1 || k > order) return Poly();
    Exponents e{};
    e[0] = static_cast<std::uint8_t>(k);
    return parts[static_cast<std::size_t>(field)][static_cast<std::size_t>(k - 1)].coeff(e);
}

PolyJet ShapeSolution::total(int field, int max_order) const {
    PolyJet t(basis);
    for (int k = 1; k <= std::min(order, max_order); ++k) {
        t += parts[static_cast<std::size_t>(field)][static_cast<std::size_t>(k - 1)];
    }
    return t;
}

ShapeSolution ShapeSolution::specialize(const std::array<double, kElementDofs>& q) const {
    if (!symbolic()) throw UsageError("specialize() needs a symbolic shape solution");
    ShapeSolution out;
    out.l = l;
    out.order = order;
    out.basis = MonomialBasis::get(1, basis->max_degree());
    out.ansatz_degree = ansatz_degree;
    for (int f = 0; f < 4; ++f) {
        for (int k = 1; k <= 3; ++k) {
            PolyJet part(out.basis);
            if (k <= order) {
                Poly p = evaluate(parts[static_cast<std::size_t>(f)][static_cast<std::size_t>(k - 1)],
                                  std::span<const double>(q));
                Exponents e{};
                e[0] = static_cast<std::uint8_t>(k);
                if (!p.is_zero()) {
                    part = PolyJet::from_terms(out.basis, {{static_cast<std::uint32_t>(*out.basis->find(e)), std::move(p)}});
                }
            }
            out.parts[static_cast<std::size_t>(f)][static_cast<std::size_t>(k - 1)] = part;
        }
    }
    return out;
}

ShapeValue eval_shape(const ShapeSolution& sh, double sigma) {
    if (!(sigma >= 0.0 && sigma <= sh.l)) throw std::out_of_range("sigma outside [0, l]");
    ShapeValue out;
    for (int f = 0; f < 4; ++f) {
        for (int k = 1; k <= sh.order; ++k) {
            const Poly p = sh.poly(f, k);
            out.value[static_cast<std::size_t>(f)] += p(sigma);
            out.derivative[static_cast<std::size_t>(f)] += p.derivative()(sigma);
        }
    }
    out.value[kFieldZ] += sigma;
    out.derivative[kFieldZ] += 1.0;
    return out;
}

}  // namespace cosserat
