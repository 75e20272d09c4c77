#pragma once

#include <Eigen/Dense>

namespace cosserat {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Axis-angle rotation vector. Canonical values returned by log_rotmat have
/// norm in [0, pi].
struct RotationVector {
    Vec3 phi = Vec3::Zero();

    double angle() const { return phi.norm(); }
};

/// Proper orthogonal 3x3 matrix.
struct RotationMatrix {
    Mat3 m = Mat3::Identity();

    /// Max deviation of m^T m from I and of det(m) from 1.
    double orthogonality_error() const;
};

/// Spin (cross-product) matrix: spin(a) * b == a x b.
Mat3 spin(const Vec3& a);

/// Rodrigues exponential map.
RotationMatrix exp_rotvec(const RotationVector& phi);

/// Rotation angle in [0, pi] from the trace, with the arccos argument clamped.
double rot_angle(const RotationMatrix& R);

/// Matrix logarithm returning the canonical rotation vector (norm in [0, pi]).
RotationVector log_rotmat(const RotationMatrix& R);

/// Partial sums of exp(S) = sum S^k / k!, used as a cross-check of exp_rotvec.
Mat3 exp_series(const Mat3& S, int terms);

}  // namespace cosserat
