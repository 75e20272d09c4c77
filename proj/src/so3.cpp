#include "cosserat/so3.hpp"

#include <algorithm>
#include <cmath>

namespace cosserat {

namespace {

constexpr double kSmallAngle = 1e-4;
constexpr double kNearPi = 1e-3;

}  // namespace

double RotationMatrix::orthogonality_error() const {
    const double ortho = (m.transpose() * m - Mat3::Identity()).cwiseAbs().maxCoeff();
    return std::max(ortho, std::abs(m.determinant() - 1.0));
}

Mat3 spin(const Vec3& a) {
    Mat3 S;
    S << 0.0, -a.z(), a.y(),
         a.z(), 0.0, -a.x(),
        -a.y(), a.x(), 0.0;
    return S;
}

RotationMatrix exp_rotvec(const RotationVector& rv) {
    const double angle = rv.angle();
    const Mat3 S = spin(rv.phi);
    double a = 0.0;
    double b = 0.0;
    if (angle < kSmallAngle) {
        const double a2 = angle * angle;
        a = 1.0 - a2 / 6.0;
        b = 0.5 - a2 / 24.0;
    } else {
        a = std::sin(angle) / angle;
        b = (1.0 - std::cos(angle)) / (angle * angle);
    }
    return RotationMatrix{Mat3::Identity() + a * S + b * S * S};
}

double rot_angle(const RotationMatrix& R) {
    const double c = std::clamp(0.5 * (R.m.trace() - 1.0), -1.0, 1.0);
    return std::acos(c);
}

RotationVector log_rotmat(const RotationMatrix& R) {
    const Mat3& m = R.m;
    // Axial vector of the antisymmetric part: phi_1 = -S_23, phi_2 = S_13, phi_3 = -S_12.
    const Mat3 A = m - m.transpose();
    const Vec3 w(-A(1, 2), A(0, 2), -A(0, 1));
    // |w| = 2 sin(angle); atan2 keeps full precision near 0 where arccos does not.
    const double angle = std::atan2(0.5 * w.norm(), 0.5 * (m.trace() - 1.0));

    if (angle < kSmallAngle) {
        // angle / (2 sin angle) = 1/2 + angle^2 / 12 + ...
        return RotationVector{(0.5 + angle * angle / 12.0) * w};
    }
    if (angle < M_PI - kNearPi) {
        return RotationVector{(angle / (2.0 * std::sin(angle))) * w};
    }

    // Near pi: sym(R) = cos(angle) I + (1 - cos(angle)) n n^T. Take the axis
    // from the dominant diagonal column and fix the sign from the
    // antisymmetric part.
    const double c = std::cos(angle);
    const Mat3 B = (0.5 * (m + m.transpose()) - c * Mat3::Identity()) / (1.0 - c);
    int k = 0;
    B.diagonal().maxCoeff(&k);
    Vec3 n = B.col(k) / std::sqrt(std::max(B(k, k), 0.0));
    n.normalize();
    if (w.dot(n) < 0.0) {
        n = -n;
    }
    // Exactly at pi both signs are valid; prefer a nonnegative leading component.
    if (w.norm() < 1e-14) {
        for (int i = 0; i < 3; ++i) {
            if (std::abs(n[i]) > 1e-14) {
                if (n[i] < 0.0) n = -n;
                break;
            }
        }
    }
    return RotationVector{angle * n};
}

Mat3 exp_series(const Mat3& S, int terms) {
    Mat3 sum = Mat3::Identity();
    Mat3 power = Mat3::Identity();
    for (int k = 1; k < terms; ++k) {
        power = power * S / static_cast<double>(k);
        sum += power;
    }
    return sum;
}

}  // namespace cosserat
