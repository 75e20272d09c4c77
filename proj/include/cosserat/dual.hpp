#pragma once

// First-order dual numbers over an arbitrary coefficient ring: value plus
// derivative with respect to one parameter (the arc coordinate sigma).

#include <cmath>

namespace cosserat {

inline double recip(double x) { return 1.0 / x; }

template <class T>
struct Dual {
    T v;
    T d;

    Dual& operator+=(const Dual& o) {
        v += o.v;
        d += o.d;
        return *this;
    }
    Dual& operator-=(const Dual& o) {
        v -= o.v;
        d -= o.d;
        return *this;
    }
};

template <class T>
Dual<T> operator+(Dual<T> a, const Dual<T>& b) { return a += b; }
template <class T>
Dual<T> operator-(Dual<T> a, const Dual<T>& b) { return a -= b; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {a.v * -1.0, a.d * -1.0}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.v * b.d + a.d * b.v}; }

template <class T>
Dual<T> operator+(Dual<T> a, double s) {
    a.v = a.v + s;
    return a;
}
template <class T>
Dual<T> operator+(double s, Dual<T> a) { return a + s; }
template <class T>
Dual<T> operator-(Dual<T> a, double s) { return a + (-s); }
template <class T>
Dual<T> operator-(double s, const Dual<T>& a) { return -a + s; }
template <class T>
Dual<T> operator*(const Dual<T>& a, double s) { return {a.v * s, a.d * s}; }
template <class T>
Dual<T> operator*(double s, const Dual<T>& a) { return a * s; }
template <class T>
Dual<T> operator/(const Dual<T>& a, double s) { return a * (1.0 / s); }

template <class T>
Dual<T> recip(const Dual<T>& a) {
    const T r = recip(a.v);
    return {r, (a.d * (r * r)) * -1.0};
}
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) { return a * recip(b); }
template <class T>
Dual<T> operator/(double s, const Dual<T>& b) { return recip(b) * s; }

template <class T>
Dual<T> sqrt(const Dual<T>& a) {
    using std::sqrt;
    const T s = sqrt(a.v);
    return {s, (a.d * recip(s)) * 0.5};
}

template <class T>
Dual<T> sin(const Dual<T>& a) {
    using std::sin;
    using std::cos;
    return {sin(a.v), a.d * cos(a.v)};
}

template <class T>
Dual<T> cos(const Dual<T>& a) {
    using std::sin;
    using std::cos;
    return {cos(a.v), (a.d * sin(a.v)) * -1.0};
}

}  // namespace cosserat
