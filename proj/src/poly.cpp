#include "cosserat/poly.hpp"

#include <algorithm>
#include <cmath>

namespace cosserat {

Poly::Poly(double c) : c_{c} { trim(); }

Poly::Poly(std::initializer_list<double> coeffs) : c_(coeffs) { trim(); }

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(int power, double c) {
    std::vector<double> v(static_cast<size_t>(power) + 1, 0.0);
    v.back() = c;
    return Poly(std::move(v));
}

void Poly::trim() {
    while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::max_abs() const {
    double m = 0.0;
    for (double v : c_) m = std::max(m, std::abs(v));
    return m;
}

double Poly::operator()(double sigma) const {
    double acc = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * sigma + *it;
    return acc;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<double> d(c_.size() - 1);
    for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = static_cast<double>(k) * c_[k];
    return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
    for (size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

Poly& Poly::operator*=(double s) {
    if (s == 0.0) {
        c_.clear();
        return *this;
    }
    for (double& v : c_) v *= s;
    return *this;
}

void Poly::add_product(const Poly& a, const Poly& b) {
    if (a.c_.empty() || b.c_.empty()) return;
    const size_t n = a.c_.size() + b.c_.size() - 1;
    if (n > c_.size()) c_.resize(n, 0.0);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        const double ai = a.c_[i];
        if (ai == 0.0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) c_[i + j] += ai * b.c_[j];
    }
    trim();
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    r.add_product(a, b);
    return r;
}

void Poly::snap(double tol) {
    for (double& v : c_) {
        if (std::abs(v) <= tol) v = 0.0;
    }
    trim();
}

}  // namespace cosserat
