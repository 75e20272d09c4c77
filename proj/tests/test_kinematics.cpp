#include <doctest.h>

#include <cmath>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/jet.hpp"
#include "cosserat/kinematics.hpp"
#include "support.hpp"

using namespace cosserat;

namespace {

Mat3 as_matrix(const Frame& f) {
    Mat3 R;
    R.col(0) = to_vec(f.d1);
    R.col(1) = to_vec(f.d2);
    R.col(2) = to_vec(f.d3);
    return R;
}

DirectorState director(double n1, double n2, double p) {
    return {n1, n2, std::sqrt(1.0 - n1 * n1 - n2 * n2), p};
}

double composition_residual(double a, double c1, double c2, double c3) {
    const DirectorState s = director(a * c1, a * c2, a * c3);
    const DirectorState back = nu_from_phi(phi_from_nu(s));
    return std::max({std::abs(back.nu1 - s.nu1), std::abs(back.nu2 - s.nu2), std::abs(back.varphi - s.varphi)});
}

}  // namespace

TEST_CASE("exact frame is orthonormal and right-handed") {
    double worst = 0.0;
    for (int k = 0; k < 2000; ++k) {
        Vec3 n(testing::uniform(-1, 1), testing::uniform(-1, 1), testing::uniform(-0.9, 1));
        n.normalize();
        const Frame f = frame_exact(DirectorState{n.x(), n.y(), n.z(), testing::uniform(-M_PI, M_PI)});
        const Mat3 R = as_matrix(f);
        worst = std::max(worst, (R.transpose() * R - Mat3::Identity()).cwiseAbs().maxCoeff());
        CHECK(R.determinant() > 0.0);
        CHECK((to_vec(f.d3) - n).norm() < 1e-15);
    }
    CHECK(worst <= 1e-12);
}

TEST_CASE("undeformed director gives the identity frame") {
    const Mat3 R = as_matrix(frame_exact(DirectorState{0.0, 0.0, 1.0, 0.0}));
    CHECK((R - Mat3::Identity()).norm() == 0.0);
}

TEST_CASE("cubic frame converges to the exact frame at fourth order") {
    std::vector<double> h;
    std::vector<double> err;
    for (double a : {0.08, 0.04, 0.02, 0.01}) {
        const DirectorState s = director(0.7 * a, -0.5 * a, 0.9 * a);
        const Mat3 exact = as_matrix(frame_exact(s));
        const Mat3 cubic = as_matrix(frame_cubic(s));
        h.push_back(a);
        err.push_back((exact - cubic).cwiseAbs().maxCoeff());
    }
    const double slope = testing::loglog_slope(h, err);
    CHECK(slope > 3.7);
    CHECK(slope < 4.3);
}

TEST_CASE("rotation vector from the director reproduces the frame to third order") {
    std::vector<double> h;
    std::vector<double> err;
    for (double a : {0.08, 0.04, 0.02, 0.01}) {
        const DirectorState s = director(0.3 * a, 0.8 * a, -0.6 * a);
        const RotParams rp = phi_from_nu(s);
        const Mat3 R = exp_rotvec({Vec3(rp.phix, rp.phiy, rp.phiz)}).m;
        h.push_back(a);
        err.push_back((R - as_matrix(frame_exact(s))).cwiseAbs().maxCoeff());
    }
    CHECK(testing::loglog_slope(h, err) > 3.7);
}

TEST_CASE("director and rotation maps are inverse through third order") {
    const BasisPtr b = MonomialBasis::get(3, 3);
    using J = Jet<double>;
    const J n1 = J::variable(b, 0);
    const J n2 = J::variable(b, 1);
    const J p = J::variable(b, 2);
    const DirectorStateT<J> s{n1, n2, sqrt(1.0 - n1 * n1 - n2 * n2), p};
    const DirectorStateT<J> back = nu_from_phi(phi_from_nu(s));
    const J r1 = back.nu1 - n1;
    const J r2 = back.nu2 - n2;
    const J r3 = back.varphi - p;
    for (const J* r : {&r1, &r2, &r3}) {
        for (const auto& [i, c] : r->terms()) CHECK(std::abs(c) < 1e-15);
    }
}

TEST_CASE("composition residual is small at moderate amplitude") {
    CHECK(composition_residual(0.05, 0.6, -0.8, 0.7) <= 1e-6);
}

TEST_CASE("composition residual is fifth order without torsion") {
    std::vector<double> h;
    std::vector<double> err;
    for (double a : {0.2, 0.1, 0.05, 0.025}) {
        h.push_back(a);
        err.push_back(composition_residual(a, 0.6, -0.8, 0.0));
    }
    CHECK(testing::loglog_slope(h, err) > 4.5);
}

TEST_CASE("tangent parameters") {
    const TangentT<double> t = tangent_params(Vec3(0.0, 3.0, 4.0));
    CHECK(t.v3 == doctest::Approx(5.0));
    CHECK(t.nu2 == doctest::Approx(0.6));
    CHECK(t.nu3 == doctest::Approx(0.8));
    CHECK_THROWS_AS(tangent_params(Vec3::Zero()), DomainError);
}

TEST_CASE("angular strain of uniform twist and uniform bending") {
    const double k = 2.5;
    auto twist = [k](Dual<double> s) {
        return frame_exact(DirectorStateT<Dual<double>>{Dual<double>{0, 0}, Dual<double>{0, 0}, Dual<double>{1, 0}, s * k});
    };
    const Vec3 ut = angular_strain(twist, 0.3);
    CHECK((ut - Vec3(0, 0, k)).norm() < 1e-14);

    // rotation about e1 by k * sigma
    auto bend = [k](Dual<double> s) {
        const Dual<double> th = s * k;
        return frame_exact(DirectorStateT<Dual<double>>{Dual<double>{0, 0}, -sin(th), cos(th), Dual<double>{0, 0}});
    };
    const Vec3 ub = angular_strain(bend, 0.2);
    CHECK((ub - Vec3(k, 0, 0)).norm() < 1e-13);
}
