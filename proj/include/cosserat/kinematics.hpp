#pragma once

// Director frame of a shear-free rod cross-section, parametrized by the
// direction cosines (nu1, nu2, nu3) of the tangent director d3 and a
// torsion angle varphi; conversion to and from the rotation vector.
//
// Every map is a template over the scalar type so the same code runs on
// doubles, jets and dual numbers.

#include <array>
#include <cmath>

#include "cosserat/dual.hpp"
#include "cosserat/so3.hpp"

namespace cosserat {

template <class S>
using Triple = std::array<S, 3>;

template <class S>
struct DirectorStateT {
    S nu1;
    S nu2;
    S nu3;
    S varphi;
};
using DirectorState = DirectorStateT<double>;

template <class S>
struct FrameT {
    Triple<S> d1;
    Triple<S> d2;
    Triple<S> d3;

    const Triple<S>& operator[](int i) const { return i == 0 ? d1 : (i == 1 ? d2 : d3); }
};
using Frame = FrameT<double>;

template <class S>
struct RotParamsT {
    S phix;
    S phiy;
    S phiz;
};
using RotParams = RotParamsT<double>;

/// Tangent direction and stretch v3 = |r'|.
template <class S>
struct TangentT {
    S nu1;
    S nu2;
    S nu3;
    S v3;
};

inline Vec3 to_vec(const Triple<double>& a) { return {a[0], a[1], a[2]}; }

template <class S>
Triple<S> cross(const Triple<S>& a, const Triple<S>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class S>
S dot(const Triple<S>& a, const Triple<S>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

/// Exact frame d_i = R_b R_a e_i. R_b is written in the form
/// 1 - nu_k^2/(1+nu3), which has no singularity at nu1 = nu2 = 0.
template <class S>
FrameT<S> frame_exact(const DirectorStateT<S>& st) {
    using std::cos;
    using std::sin;
    const S c = cos(st.varphi);
    const S s = sin(st.varphi);
    const S k = 1.0 / (st.nu3 + 1.0);
    const S b11 = 1.0 - st.nu1 * st.nu1 * k;
    const S b12 = (st.nu1 * st.nu2 * k) * -1.0;
    const S b22 = 1.0 - st.nu2 * st.nu2 * k;
    FrameT<S> f{
        {b11 * c + b12 * s, b12 * c + b22 * s, (st.nu1 * c + st.nu2 * s) * -1.0},
        {b12 * c - b11 * s, b22 * c - b12 * s, st.nu1 * s - st.nu2 * c},
        {st.nu1, st.nu2, st.nu3},
    };
    return f;
}

/// Third-order polynomial directors in (nu1, nu2, varphi); nu3 is unused.
template <class S>
FrameT<S> frame_cubic(const DirectorStateT<S>& st) {
    const S& n1 = st.nu1;
    const S& n2 = st.nu2;
    const S& p = st.varphi;
    const S n11 = n1 * n1;
    const S n22 = n2 * n2;
    const S n12 = n1 * n2;
    const S pp = p * p;
    const S n12p = n12 * p;
    const S ppp = pp * p;
    FrameT<S> f{
        {1.0 - 0.5 * pp - 0.5 * n11 - 0.5 * n12p,
         p - 0.5 * n12 - 0.5 * (n22 * p) - ppp / 6.0,
         n1 * pp * 0.5 - n1 - n2 * p},
        {0.5 * (n11 * p) - p - 0.5 * n12 + ppp / 6.0,
         1.0 - 0.5 * pp - 0.5 * n22 + 0.5 * n12p,
         n1 * p - n2 + 0.5 * (n2 * pp)},
        {n1, n2, 1.0 - 0.5 * n11 - 0.5 * n22},
    };
    return f;
}

/// Rotation vector of the frame through third order in (nu1, nu2, varphi).
template <class S>
RotParamsT<S> phi_from_nu(const DirectorStateT<S>& st) {
    const S& n1 = st.nu1;
    const S& n2 = st.nu2;
    const S& p = st.varphi;
    const S r = n1 * n1 + n2 * n2;
    const S w = (r - 0.5 * (p * p)) / 6.0;
    return {
        0.5 * (p * n1) - n2 - w * n2,
        n1 + 0.5 * (p * n2) + w * n1,
        p - (r * p) / 12.0,
    };
}

/// Inverse of phi_from_nu through third order; nu3 completes the unit vector.
template <class S>
DirectorStateT<S> nu_from_phi(const RotParamsT<S>& rp) {
    using std::sqrt;
    const S& x = rp.phix;
    const S& y = rp.phiy;
    const S& z = rp.phiz;
    const S t = (x * x + y * y + z * z) / 6.0;
    const S n1 = y + 0.5 * (x * z) - t * y;
    const S n2 = 0.5 * (y * z) - x + t * x;
    const S p = z + ((x * x + y * y) * z) / 12.0;
    const S n3 = sqrt(1.0 - n1 * n1 - n2 * n2);
    return {n1, n2, n3, p};
}

/// Unit tangent components and stretch from r'. Throws DomainError when
/// the numeric stretch is zero.
TangentT<double> tangent_params(const Vec3& r_prime);

template <class S>
TangentT<S> tangent_params_generic(const Triple<S>& rp) {
    using std::sqrt;
    const S v3 = sqrt(rp[0] * rp[0] + rp[1] * rp[1] + rp[2] * rp[2]);
    const S inv = 1.0 / v3;
    return {rp[0] * inv, rp[1] * inv, rp[2] * inv, v3};
}

/// Components u_i = u . d_i of u = 1/2 sum d_i x d_i', given the frame as
/// dual numbers carrying the sigma-derivative.
template <class S>
Triple<S> strain_components(const FrameT<Dual<S>>& f) {
    auto part = [&](int i) {
        const auto& di = f[i];
        return cross(Triple<S>{di[0].v, di[1].v, di[2].v}, Triple<S>{di[0].d, di[1].d, di[2].d});
    };
    Triple<S> u = part(0);
    for (int i = 1; i < 3; ++i) {
        const Triple<S> c = part(i);
        for (std::size_t k = 0; k < 3; ++k) u[k] += c[k];
    }
    Triple<S> out;
    for (int i = 0; i < 3; ++i) {
        const auto& di = f[i];
        const Triple<S> v{di[0].v, di[1].v, di[2].v};
        out[static_cast<std::size_t>(i)] = dot(u, v) * 0.5;
    }
    return out;
}

/// Angular strain of a frame field at sigma. The callable maps a dual
/// number (sigma, 1) to the frame with its sigma-derivative.
template <class F>
Vec3 angular_strain(F&& frame_field, double sigma) {
    const FrameT<Dual<double>> f = frame_field(Dual<double>{sigma, 1.0});
    const Triple<double> u = strain_components(f);
    return {u[0], u[1], u[2]};
}

}  // namespace cosserat
