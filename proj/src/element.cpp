#include "cosserat/element.hpp"

#include <algorithm>
#include <cmath>

#include "cosserat/dual.hpp"
#include "cosserat/errors.hpp"
#include "cosserat/kinematics.hpp"

namespace cosserat {

namespace {

Jet<double> at(const PolyJet& a, double sigma, const BasisPtr& basis) {
    return a.map([sigma](const Poly& p) { return p(sigma); }).rebased(basis);
}

// Order-1 director perturbation as jets: returns w = 1/2 sum e_i x d_i^(1)
// evaluated from the linear parts of the cubic frame.
Triple<Jet<double>> linear_rotation(const Jet<double>& nu1, const Jet<double>& nu2, const Jet<double>& vphi) {
    const FrameT<Jet<double>> d = frame_cubic(DirectorStateT<Jet<double>>{nu1, nu2, nu1, vphi});
    Triple<Jet<double>> w{Jet<double>(nu1.basis()), Jet<double>(nu1.basis()), Jet<double>(nu1.basis())};
    for (int i = 0; i < 3; ++i) {
        Triple<Jet<double>> di;
        for (std::size_t c = 0; c < 3; ++c) di[c] = d[i][c].homogeneous(1);
        // e_i x v
        const std::size_t a = static_cast<std::size_t>((i + 1) % 3);
        const std::size_t b = static_cast<std::size_t>((i + 2) % 3);
        w[a] -= di[b];
        w[b] += di[a];
    }
    for (auto& c : w) c *= 0.5;
    return w;
}

std::size_t multinomial_count(std::array<std::int8_t, 3> v, int n) {
    std::sort(v.begin(), v.begin() + n);
    std::size_t perms = 0;
    do {
        ++perms;
    } while (std::next_permutation(v.begin(), v.begin() + n));
    return perms;
}

}  // namespace

GaussRule gauss_legendre(int n) {
    if (n < 1) throw UsageError("quadrature needs at least one point");
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int k = 1; k < n; ++k) {
        const double b = k / std::sqrt(4.0 * k * k - 1.0);
        J(k, k - 1) = b;
        J(k - 1, k) = b;
    }
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    GaussRule rule;
    for (int i = 0; i < n; ++i) {
        rule.nodes.push_back(es.eigenvalues()(i));
        const double v = es.eigenvectors()(0, i);
        rule.weights.push_back(2.0 * v * v);
    }
    return rule;
}

double ElementOperators::Q_at(int i, int j, int k) const {
    if (Q.empty()) return 0.0;
    return Q[static_cast<std::size_t>((i * 12 + j) * 12 + k)];
}

double ElementOperators::C_at(int i, int j, int k, int m) const {
    if (C.empty()) return 0.0;
    return C[static_cast<std::size_t>(((i * 12 + j) * 12 + k) * 12 + m)];
}

Jet<double> kinetic_energy_density(const ShapeSolution& sh, const SectionProperties& sec, double sigma,
                                   const BasisPtr& basis) {
    if (!sh.symbolic()) throw UsageError("kinetic energy needs a symbolic shape solution");
    const Jet<double> xd = at(sh.parts[kFieldX][0], sigma, basis);
    const Jet<double> yd = at(sh.parts[kFieldY][0], sigma, basis);
    const Jet<double> zd = at(sh.parts[kFieldZ][0], sigma, basis);
    const Jet<double> nu1 = at(dsigma(sh.parts[kFieldX][0]), sigma, basis);
    const Jet<double> nu2 = at(dsigma(sh.parts[kFieldY][0]), sigma, basis);
    const Jet<double> vphi = at(sh.parts[kFieldVarphi][0], sigma, basis);
    const Triple<Jet<double>> w = linear_rotation(nu1, nu2, vphi);
    return (xd * xd + yd * yd + zd * zd) * (0.5 * sec.mu) +
           (w[0] * w[0]) * (0.5 * sec.I11) + (w[1] * w[1]) * (0.5 * sec.I22) + (w[2] * w[2]) * (0.5 * sec.I33);
}

Jet<double> strain_energy_density(const ShapeSolution& sh, const SectionProperties& sec, double sigma,
                                  const BasisPtr& basis) {
    if (!sh.symbolic()) throw UsageError("strain energy needs a symbolic shape solution");
    using D = Dual<Jet<double>>;
    auto field = [&](int f, bool derivative) {
        PolyJet a = sh.total(f);
        if (derivative) a = dsigma(a);
        const PolyJet b = dsigma(a);
        return D{at(a, sigma, basis), at(b, sigma, basis)};
    };
    const D x1 = field(kFieldX, true);
    const D y1 = field(kFieldY, true);
    const D z1 = field(kFieldZ, true) + 1.0;
    const D vphi = field(kFieldVarphi, false);

    const D v3 = sqrt(x1 * x1 + y1 * y1 + z1 * z1);
    const D inv = 1.0 / v3;
    const D nu1 = x1 * inv;
    const D nu2 = y1 * inv;
    const FrameT<D> frame = frame_cubic(DirectorStateT<D>{nu1, nu2, nu1, vphi});
    const Triple<Jet<double>> u = strain_components(frame);
    const Jet<double> e = v3.v - 1.0;
    return (u[0] * u[0]) * (0.5 * sec.J11) + (u[1] * u[1]) * (0.5 * sec.J22) + (u[2] * u[2]) * (0.5 * sec.J33) +
           (e * e) * (0.5 * sec.K33);
}

ElementOperators build_element(const SectionProperties& sec, double l, const BuildOptions& opts) {
    if (!(l > 0.0)) throw ConfigurationError("element length must be positive");
    const int order = opts.nonlinear ? 3 : 1;
    const ShapeSolution sh = jet_shape(sec, l, order);
    const BasisPtr basis = MonomialBasis::get(kElementDofs, opts.nonlinear ? 4 : 2);
    const GaussRule rule = gauss_legendre(opts.quadrature_points);

    ElementOperators ops;
    ops.l = l;
    ops.section = sec;
    ops.strain_energy = Jet<double>(basis);
    ops.kinetic_energy = Jet<double>(basis);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double sigma = 0.5 * l * (rule.nodes[i] + 1.0);
        const double w = 0.5 * l * rule.weights[i];
        ops.strain_energy += strain_energy_density(sh, sec, sigma, basis) * w;
        ops.kinetic_energy += kinetic_energy_density(sh, sec, sigma, basis) * w;
    }

    auto quad_form = [&](const Jet<double>& e, Mat12& out) {
        out.setZero();
        for (const auto& [idx, c] : e.terms()) {
            if (basis->degree(idx) != 2) continue;
            const Exponents& ex = basis->exponents(idx);
            int a = -1;
            int b = -1;
            for (int v = 0; v < kElementDofs; ++v) {
                for (int r = 0; r < ex[static_cast<std::size_t>(v)]; ++r) (a < 0 ? a : b) = v;
            }
            if (a == b) {
                out(a, a) = 2.0 * c;
            } else {
                out(a, b) = c;
                out(b, a) = c;
            }
        }
    };
    quad_form(ops.kinetic_energy, ops.M);
    quad_form(ops.strain_energy, ops.K);
    if (Eigen::LLT<Mat12>(ops.M).info() != Eigen::Success) {
        throw ConfigurationError("element mass matrix is not positive definite");
    }

    if (opts.nonlinear) {
        const auto grad = gradient(ops.strain_energy);
        ops.Q.assign(12 * 12 * 12, 0.0);
        ops.C.assign(12 * 12 * 12 * 12, 0.0);
        for (int i = 0; i < kElementDofs; ++i) {
            Jet<double> gi(basis);
            for (const auto& [idx, c] : grad[static_cast<std::size_t>(i)].terms()) {
                const int deg = basis->degree(idx);
                if (deg < 2) continue;
                gi += Jet<double>::from_terms(basis, {{idx, c}});
                std::array<std::int8_t, 3> v{-1, -1, -1};
                int n = 0;
                const Exponents& ex = basis->exponents(idx);
                for (int var = 0; var < kElementDofs; ++var) {
                    for (int r = 0; r < ex[static_cast<std::size_t>(var)]; ++r) v[static_cast<std::size_t>(n++)] = static_cast<std::int8_t>(var);
                }
                ops.g_terms.push_back({i, c, v});
                const double share = c / static_cast<double>(multinomial_count(v, n));
                std::array<std::int8_t, 3> p = v;
                std::sort(p.begin(), p.begin() + n);
                do {
                    if (n == 2) {
                        ops.Q[static_cast<std::size_t>((i * 12 + p[0]) * 12 + p[1])] += share;
                    } else {
                        ops.C[static_cast<std::size_t>(((i * 12 + p[0]) * 12 + p[1]) * 12 + p[2])] += share;
                    }
                } while (std::next_permutation(p.begin(), p.begin() + n));
            }
            ops.g[static_cast<std::size_t>(i)] = gi;
        }
        std::stable_partition(ops.g_terms.begin(), ops.g_terms.end(),
                              [](const ForceTerm& t) { return t.v[2] < 0; });
        ops.g_quadratic_count = static_cast<std::size_t>(
            std::count_if(ops.g_terms.begin(), ops.g_terms.end(), [](const ForceTerm& t) { return t.v[2] < 0; }));
        for (const auto& [idx, c] : ops.strain_energy.terms()) {
            if (basis->degree(idx) < 3) continue;
            std::array<std::int8_t, 4> v{-1, -1, -1, -1};
            int n = 0;
            const Exponents& ex = basis->exponents(idx);
            for (int var = 0; var < kElementDofs; ++var) {
                for (int r = 0; r < ex[static_cast<std::size_t>(var)]; ++r) v[static_cast<std::size_t>(n++)] = static_cast<std::int8_t>(var);
            }
            ops.potential_terms.emplace_back(c, v);
        }
    } else {
        for (auto& gi : ops.g) gi = Jet<double>(basis);
    }
    return ops;
}

Vec12 nonlinear_force(const ElementOperators& ops, const Vec12& q) {
    Vec12 g = Vec12::Zero();
    const ForceTerm* t = ops.g_terms.data();
    const ForceTerm* split = t + ops.g_quadratic_count;
    const ForceTerm* end = t + ops.g_terms.size();
    for (; t != split; ++t) g(t->row) += t->c * q(t->v[0]) * q(t->v[1]);
    for (; t != end; ++t) g(t->row) += t->c * q(t->v[0]) * q(t->v[1]) * q(t->v[2]);
    return g;
}

Vec12 nonlinear_force_tensor(const ElementOperators& ops, const Vec12& q) {
    Vec12 g = Vec12::Zero();
    if (ops.Q.empty()) return g;
    for (int i = 0; i < 12; ++i) {
        double s = 0.0;
        for (int j = 0; j < 12; ++j) {
            for (int k = 0; k < 12; ++k) {
                const double qjk = q(j) * q(k);
                s += ops.Q_at(i, j, k) * qjk;
                for (int m = 0; m < 12; ++m) s += ops.C_at(i, j, k, m) * qjk * q(m);
            }
        }
        g(i) = s;
    }
    return g;
}

Mat12 nonlinear_jacobian(const ElementOperators& ops, const Vec12& q) {
    Mat12 J = Mat12::Zero();
    for (const ForceTerm& t : ops.g_terms) {
        const int n = t.v[2] >= 0 ? 3 : 2;
        for (int a = 0; a < n; ++a) {
            double v = t.c;
            for (int b = 0; b < n; ++b) {
                if (b != a) v *= q(t.v[static_cast<std::size_t>(b)]);
            }
            J(t.row, t.v[static_cast<std::size_t>(a)]) += v;
        }
    }
    return J;
}

double nonlinear_potential(const ElementOperators& ops, const Vec12& q) {
    double V = 0.0;
    for (const auto& [c, v] : ops.potential_terms) {
        double t = c;
        for (auto i : v) {
            if (i >= 0) t *= q(i);
        }
        V += t;
    }
    return V;
}

Vec12 equivalent_nodal_loads(const ShapeSolution& sh, const LoadField& xi, const LoadField& eta,
                             int quadrature_points) {
    if (!sh.symbolic()) throw UsageError("equivalent loads need a symbolic shape solution");
    const BasisPtr basis = MonomialBasis::get(kElementDofs, 1);
    const GaussRule rule = gauss_legendre(quadrature_points);
    Vec12 f = Vec12::Zero();
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double sigma = 0.5 * sh.l * (rule.nodes[i] + 1.0);
        const double w = 0.5 * sh.l * rule.weights[i];
        const Vec3 force = xi ? xi(sigma) : Vec3::Zero();
        const Vec3 torque = eta ? eta(sigma) : Vec3::Zero();
        const std::array<Jet<double>, 3> r{at(sh.parts[kFieldX][0], sigma, basis),
                                           at(sh.parts[kFieldY][0], sigma, basis),
                                           at(sh.parts[kFieldZ][0], sigma, basis)};
        const DirectorStateT<Jet<double>> st{at(dsigma(sh.parts[kFieldX][0]), sigma, basis),
                                             at(dsigma(sh.parts[kFieldY][0]), sigma, basis), Jet<double>(basis),
                                             at(sh.parts[kFieldVarphi][0], sigma, basis)};
        const RotParamsT<Jet<double>> rp = phi_from_nu(st);
        const std::array<Jet<double>, 3> phi{rp.phix, rp.phiy, rp.phiz};
        for (int j = 0; j < kElementDofs; ++j) {
            const std::size_t idx = basis->variable(j);
            double s = 0.0;
            for (int c = 0; c < 3; ++c) {
                s += force(c) * r[static_cast<std::size_t>(c)].coeff(idx);
                s += torque(c) * phi[static_cast<std::size_t>(c)].coeff(idx);
            }
            f(j) += w * s;
        }
    }
    return f;
}

}  // namespace cosserat
