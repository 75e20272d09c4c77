#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>
#include <unsupported/Eigen/AutoDiff>

#include "cosserat/element.hpp"
#include "cosserat/kinematics.hpp"
#include "cosserat/shapefn.hpp"
#include "cosserat/so3.hpp"
#include "support.hpp"

using namespace cosserat;

using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;
namespace Eigen {
inline AD recip(const AD& x) { return 1.0 / x; }
}  // namespace Eigen

namespace {

const double l = testing::kRefLength;

const ElementOperators& element() {
    static const ElementOperators ops = build_element(testing::ref_section(), l);
    return ops;
}

Vec12 random_q(double scale) {
    Vec12 q;
    for (int i = 0; i < 12; ++i) q(i) = testing::uniform(-scale, scale) * ((i % 6) < 3 ? l : 1.0);
    return q;
}

// Independent strain-energy minimizer for a rod clamped at sigma = 0 with
// a prescribed end state: polynomial Ritz fields, exact frame, Newton.
namespace ritz {

constexpr int N = 8;  // free coefficients per field
constexpr int NU = 2 + 4 * N;

struct EndState {
    double X, Y, Z, n1, n2, n3, psi;
};

template <class T>
using P = std::vector<T>;

template <class T>
P<T> add(P<T> a, const P<T>& b) {
    if (b.size() > a.size()) a.resize(b.size(), b[0] * 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
}

template <class T>
P<T> scaled(const std::vector<double>& p, const T& c) {
    P<T> r;
    for (double x : p) r.push_back(c * x);
    return r;
}

// s^k (1 - s)^k sum_j c_j s^j
template <class T>
P<T> bubble(const T* c, int k) {
    std::vector<double> b{1.0};
    for (int i = 0; i < k; ++i) b.insert(b.begin(), 0.0);
    for (int i = 0; i < k; ++i) {
        std::vector<double> nb(b.size() + 1, 0.0);
        for (std::size_t j = 0; j < b.size(); ++j) {
            nb[j] += b[j];
            nb[j + 1] -= b[j];
        }
        b = nb;
    }
    P<T> r(b.size() + N, c[0] * 0.0);
    for (int j = 0; j < N; ++j) {
        for (std::size_t i = 0; i < b.size(); ++i) r[i + static_cast<std::size_t>(j)] += c[j] * b[i];
    }
    return r;
}

template <class T>
std::array<T, 3> eval(const P<T>& p, double s) {
    T v = p[0] * 0.0, d = v, dd = v;
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
        dd = dd * s + 2.0 * d;
        d = d * s + v;
        v = v * s + p[static_cast<std::size_t>(i)];
    }
    return {v, d, dd};
}

template <class T>
T energy(const std::vector<T>& u, const EndState& bc, const SectionProperties& sec) {
    const std::vector<double> H01{0, 0, 3, -2}, H10{0, 1, -2, 1}, H11{0, 0, -1, 1}, S1{0, 1};
    const T& v = u[0];
    const T zero = u[0] * 0.0;
    const P<T> x = add(add(scaled<T>(H01, zero + bc.X), scaled<T>(H11, l * v * bc.n1)), bubble(&u[2], 2));
    const P<T> y = add(add(scaled<T>(H01, zero + bc.Y), scaled<T>(H11, l * v * bc.n2)), bubble(&u[2 + N], 2));
    const P<T> z = add(add(add(scaled<T>(H01, zero + bc.Z), scaled<T>(H10, l * u[1])), scaled<T>(H11, l * (v * bc.n3 - 1.0))),
                       bubble(&u[2 + 2 * N], 2));
    const P<T> f = add(scaled<T>(S1, zero + bc.psi), bubble(&u[2 + 3 * N], 1));
    using G = boost::math::quadrature::gauss<double, 30>;
    T U = zero;
    auto point = [&](double s, double w) {
        const auto X = eval(x, s), Y = eval(y, s), Z = eval(z, s), F = eval(f, s);
        const Dual<T> r1{X[1] / l, X[2] / (l * l)}, r2{Y[1] / l, Y[2] / (l * l)}, r3{1.0 + Z[1] / l, Z[2] / (l * l)};
        const Dual<T> ph{F[0], F[1] / l};
        const Dual<T> v3 = sqrt(r1 * r1 + r2 * r2 + r3 * r3);
        const Dual<T> inv = 1.0 / v3;
        const auto uu = strain_components(frame_exact(DirectorStateT<Dual<T>>{r1 * inv, r2 * inv, r3 * inv, ph}));
        const T e = v3.v - 1.0;
        U += (w * l * 0.5) * (sec.J11 * uu[0] * uu[0] + sec.J22 * uu[1] * uu[1] + sec.J33 * uu[2] * uu[2] + sec.K33 * e * e);
    };
    for (std::size_t i = 0; i < G::abscissa().size(); ++i) {
        const double a = G::abscissa()[i];
        const double w = G::weights()[i];
        point(0.5 * (1 + a), 0.5 * w);
        if (a != 0) point(0.5 * (1 - a), 0.5 * w);
    }
    return U;
}

double minimum(const EndState& bc, const SectionProperties& sec) {
    Eigen::VectorXd u = Eigen::VectorXd::Zero(NU);
    u(0) = 1.0;
    auto grad = [&](const Eigen::VectorXd& p, double* val) {
        std::vector<AD> a(NU);
        for (int i = 0; i < NU; ++i) a[static_cast<std::size_t>(i)] = AD(p(i), NU, i);
        const AD e = energy(a, bc, sec);
        if (val) *val = e.value();
        return Eigen::VectorXd(e.derivatives());
    };
    double val = 0;
    for (int it = 0; it < 30; ++it) {
        const Eigen::VectorXd g = grad(u, &val);
        Eigen::MatrixXd H(NU, NU);
        for (int j = 0; j < NU; ++j) {
            const double h = 1e-7;
            Eigen::VectorXd p = u, m = u;
            p(j) += h;
            m(j) -= h;
            H.col(j) = (grad(p, nullptr) - grad(m, nullptr)) / (2 * h);
        }
        H = 0.5 * (H + H.transpose());
        const Eigen::VectorXd du = H.ldlt().solve(-g);
        u += du;
        if (du.norm() < 1e-15) break;
    }
    grad(u, &val);
    return val;
}

EndState end_state(const Eigen::Matrix<double, 6, 1>& qb) {
    const Mat3 R = exp_rotvec({Vec3(qb(3), qb(4), qb(5))}).m;
    const Frame untwisted = frame_exact(DirectorState{R(0, 2), R(1, 2), R(2, 2), 0.0});
    const Vec3 d1 = R.col(0);
    const double psi = std::atan2(d1.dot(to_vec(untwisted.d2)), d1.dot(to_vec(untwisted.d1)));
    return {qb(0), qb(1), qb(2), R(0, 2), R(1, 2), R(2, 2), psi};
}

}  // namespace ritz

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates polynomials of degree 2n-1 exactly") {
    for (int n : {1, 3, 8, 12}) {
        const GaussRule g = gauss_legendre(n);
        REQUIRE(static_cast<int>(g.nodes.size()) == n);
        for (int p = 0; p <= 2 * n - 1; ++p) {
            double s = 0;
            for (int i = 0; i < n; ++i) s += g.weights[static_cast<std::size_t>(i)] * std::pow(g.nodes[static_cast<std::size_t>(i)], p);
            const double exact = p % 2 == 1 ? 0.0 : 2.0 / (p + 1);
            CHECK(std::abs(s - exact) < 1e-14);
        }
    }
}

TEST_CASE("mass and stiffness are symmetric, stiffness positive semidefinite") {
    const ElementOperators& ops = element();
    CHECK((ops.M - ops.M.transpose()).norm() <= 1e-14 * ops.M.norm());
    CHECK((ops.K - ops.K.transpose()).norm() <= 1e-14 * ops.K.norm());
    const Eigen::SelfAdjointEigenSolver<Mat12> em(ops.M);
    CHECK(em.eigenvalues().minCoeff() > 0.0);
    const Eigen::SelfAdjointEigenSolver<Mat12> ek(ops.K);
    CHECK(ek.eigenvalues().minCoeff() > -1e-10 * ek.eigenvalues().maxCoeff());
    // six rigid-body modes
    int zero = 0;
    for (int i = 0; i < 12; ++i) zero += std::abs(ek.eigenvalues()(i)) < 1e-9 * ek.eigenvalues().maxCoeff();
    CHECK(zero == 6);
}

TEST_CASE("rigid-body motions are stress free and carry the right inertia") {
    const ElementOperators& ops = element();
    const SectionProperties& sec = ops.section;
    const double scale = ops.K.norm();
    for (int d = 0; d < 3; ++d) {
        Vec12 t = Vec12::Zero();
        t(d) = t(6 + d) = 1.0;
        CHECK((ops.K * t).norm() < 1e-12 * scale);
        CHECK(t.dot(ops.M * t) == doctest::Approx(sec.mu * l).epsilon(1e-12));
    }
    Vec12 rx = Vec12::Zero();  // small rotation about e1: y = -theta sigma
    rx(3) = rx(9) = 1.0;
    rx(7) = -l;
    CHECK((ops.K * rx).norm() < 1e-12 * scale);
    Vec12 ry = Vec12::Zero();  // about e2: x = theta sigma
    ry(4) = ry(10) = 1.0;
    ry(6) = l;
    CHECK((ops.K * ry).norm() < 1e-12 * scale);
    Vec12 rz = Vec12::Zero();
    rz(5) = rz(11) = 1.0;
    CHECK((ops.K * rz).norm() < 1e-12 * scale);
    CHECK(rz.dot(ops.M * rz) == doctest::Approx(sec.I33 * l).epsilon(1e-12));
}

TEST_CASE("bending, axial and torsional stiffness") {
    const ElementOperators& ops = element();
    const SectionProperties& sec = ops.section;
    CHECK(ops.K(8, 8) == doctest::Approx(sec.K33 / l).epsilon(1e-12));
    CHECK(ops.K(11, 11) == doctest::Approx(sec.J33 / l).epsilon(1e-12));
    CHECK(ops.K(6, 6) == doctest::Approx(12 * sec.J22 / (l * l * l)).epsilon(1e-12));
    CHECK(ops.K(7, 7) == doctest::Approx(12 * sec.J11 / (l * l * l)).epsilon(1e-12));
    CHECK(ops.K(9, 9) == doctest::Approx(4 * sec.J11 / l).epsilon(1e-12));
    CHECK(ops.K(3, 9) == doctest::Approx(2 * sec.J11 / l).epsilon(1e-12));
}

TEST_CASE("force from terms equals force from tensors") {
    const ElementOperators& ops = element();
    for (int k = 0; k < 20; ++k) {
        const Vec12 q = random_q(0.05);
        const Vec12 a = nonlinear_force(ops, q);
        const Vec12 b = nonlinear_force_tensor(ops, q);
        CHECK((a - b).norm() <= 1e-12 * b.norm());
    }
}

TEST_CASE("nonlinear force derives from a potential") {
    const ElementOperators& ops = element();
    double worst_sym = 0.0;
    double worst_grad = 0.0;
    for (int k = 0; k < 20; ++k) {
        const Vec12 q = random_q(0.05);
        const Mat12 J = nonlinear_jacobian(ops, q);
        worst_sym = std::max(worst_sym, (J - J.transpose()).cwiseAbs().maxCoeff() / J.cwiseAbs().maxCoeff());
        const Vec12 g = nonlinear_force(ops, q);
        Vec12 fd;
        for (int i = 0; i < 12; ++i) {
            const double h = 1e-6 * ((i % 6) < 3 ? l : 1.0);
            Vec12 p = q, m = q;
            p(i) += h;
            m(i) -= h;
            fd(i) = (nonlinear_potential(ops, p) - nonlinear_potential(ops, m)) / (2 * h);
        }
        worst_grad = std::max(worst_grad, (fd - g).cwiseAbs().maxCoeff() / g.cwiseAbs().maxCoeff());
    }
    CHECK(worst_sym <= 1e-8);
    CHECK(worst_grad <= 1e-6);
}

TEST_CASE("nonlinear force is invariant under rigid translation") {
    const ElementOperators& ops = element();
    const Vec12 q = random_q(0.05);
    Vec12 t = Vec12::Zero();
    t(0) = t(6) = 0.02;
    t(1) = t(7) = -0.01;
    t(2) = t(8) = 0.03;
    CHECK((nonlinear_force(ops, q + t) - nonlinear_force(ops, q)).norm() <= 1e-10 * nonlinear_force(ops, q).norm());
}

TEST_CASE("force is quadratic plus cubic") {
    const ElementOperators& ops = element();
    const Vec12 q = random_q(0.05);
    const Vec12 g1 = nonlinear_force(ops, q);
    const Vec12 g2 = nonlinear_force(ops, 2.0 * q);
    const Vec12 gm = nonlinear_force(ops, -q);
    const Vec12 quad = 0.5 * (g1 + gm);
    const Vec12 cub = 0.5 * (g1 - gm);
    CHECK((g2 - 4 * quad - 8 * cub).norm() <= 1e-10 * g2.norm());
    for (const Jet<double>& gi : ops.g) {
        for (const auto& [idx, c] : gi.terms()) {
            const int d = gi.basis()->degree(idx);
            CHECK((d == 2 || d == 3));
        }
    }
}

TEST_CASE("linear build has no nonlinear operators") {
    BuildOptions o;
    o.nonlinear = false;
    const ElementOperators ops = build_element(testing::ref_section(), l, o);
    CHECK_FALSE(ops.nonlinear());
    CHECK((ops.K - element().K).norm() == 0.0);
    CHECK((ops.M - element().M).norm() == 0.0);
}

TEST_CASE("uniform distributed load gives the consistent nodal loads") {
    const ShapeSolution sh = jet_shape(testing::ref_section(), l, 1);
    const double w = 3.0;
    const Vec12 f = equivalent_nodal_loads(sh, [w](double) { return Vec3(0.0, w, 0.0); },
                                           [](double) { return Vec3::Zero(); });
    CHECK(f(1) == doctest::Approx(w * l / 2));
    CHECK(f(7) == doctest::Approx(w * l / 2));
    CHECK(f(3) == doctest::Approx(-w * l * l / 12));
    CHECK(f(9) == doctest::Approx(w * l * l / 12));
    const Vec12 t = equivalent_nodal_loads(sh, [](double) { return Vec3::Zero(); },
                                           [](double) { return Vec3(0.0, 0.0, 2.0); });
    CHECK(t(5) == doctest::Approx(l));
    CHECK(t(11) == doctest::Approx(l));
}

TEST_CASE("cubic and quartic energy match an independent exact-rod minimization") {
    const ElementOperators& ops = element();
    const SectionProperties sec = testing::ref_section();
    std::vector<Eigen::Matrix<double, 6, 1>> dirs(2);
    dirs[0] << 0.3, 0.0, 0.0, 0.0, 0.0, 0.0;
    dirs[1] << 0.3, -0.2, 0.02, 0.4, 0.5, -0.3;
    for (const auto& dir : dirs) {
        std::vector<double> rem;
        for (double eps : {0.04, 0.02}) {
            Eigen::Matrix<double, 6, 1> qb = dir * eps;
            qb.head<3>() *= l;
            const double Umin = ritz::minimum(ritz::end_state(qb), sec);
            Vec12 q = Vec12::Zero();
            q.tail<6>() = qb;
            const double U2 = 0.5 * q.dot(ops.K * q);
            const double remainder = std::abs(Umin - U2 - nonlinear_potential(ops, q));
            CHECK(remainder < 0.05 * std::abs(Umin - U2));
            rem.push_back(remainder);
        }
        // fifth order or better: halving the amplitude gains at least 2^4
        CHECK(rem[0] / rem[1] > 16.0);
    }
}
