#include "cosserat/kinematics.hpp"

#include "cosserat/errors.hpp"

namespace cosserat {

TangentT<double> tangent_params(const Vec3& r_prime) {
    const double v3 = r_prime.norm();
    if (!(v3 > 0.0)) throw DomainError("degenerate rod axis: |r'| = 0");
    return {r_prime.x() / v3, r_prime.y() / v3, r_prime.z() / v3, v3};
}

}  // namespace cosserat
