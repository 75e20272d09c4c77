#pragma once

// Truncated multivariate polynomials ("jets") in up to twelve variables.
//
// A jet stores only its nonzero terms, keyed by the index of the monomial in
// a shared MonomialBasis. Basis indices follow graded lexicographic order
// (total degree first, then exponents compared left to right, larger first),
// so iterating terms is deterministic and all terms of degree <= d form a
// prefix of the term list.

#include <array>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cosserat/errors.hpp"
#include "cosserat/poly.hpp"

namespace cosserat {

inline constexpr int kMaxJetVars = 12;
using Exponents = std::array<std::uint8_t, kMaxJetVars>;

class MonomialBasis {
public:
    /// Shared, cached basis of all monomials of total degree <= max_degree.
    static std::shared_ptr<const MonomialBasis> get(int nvars, int max_degree);

    int nvars() const { return nvars_; }
    int max_degree() const { return max_degree_; }
    std::size_t size() const { return exps_.size(); }

    const Exponents& exponents(std::size_t i) const { return exps_[i]; }
    int degree(std::size_t i) const { return degs_[i]; }
    /// First index of degree d; degree_begin(max_degree + 1) == size().
    std::size_t degree_begin(int d) const;
    std::size_t variable(int var) const { return vars_[static_cast<std::size_t>(var)]; }

    std::optional<std::size_t> find(const Exponents& e) const;
    /// Index of monomial a*b; requires degree(a) + degree(b) <= max_degree.
    std::uint32_t product(std::size_t a, std::size_t b) const {
        return mul_[row_offset_[a] + b];
    }
    /// Index of monomial i / x_var, or -1 if x_var does not divide it.
    std::int32_t lowered(std::size_t i, int var) const {
        return lower_[i * static_cast<std::size_t>(nvars_) + static_cast<std::size_t>(var)];
    }

    MonomialBasis(int nvars, int max_degree);

private:
    int nvars_;
    int max_degree_;
    std::vector<Exponents> exps_;
    std::vector<int> degs_;
    std::vector<std::size_t> deg_begin_;
    std::vector<std::size_t> vars_;
    std::vector<std::size_t> row_offset_;
    std::vector<std::uint32_t> mul_;
    std::vector<std::int32_t> lower_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

using BasisPtr = std::shared_ptr<const MonomialBasis>;

// Coefficient-type hooks so Jet<double> and Jet<Poly> share one implementation.
inline bool coeff_is_zero(double c) { return c == 0.0; }
inline bool coeff_is_zero(const Poly& c) { return c.is_zero(); }
inline void accumulate_product(double& acc, double a, double b) { acc += a * b; }
inline void accumulate_product(Poly& acc, const Poly& a, const Poly& b) { acc.add_product(a, b); }
inline double constant_value(double c) { return c; }
/// Polynomial coefficients must be sigma-independent where a scalar is required.
double constant_value(const Poly& c);

template <class T>
class Jet {
public:
    using Term = std::pair<std::uint32_t, T>;

    Jet() = default;
    explicit Jet(BasisPtr basis) : basis_(std::move(basis)) {}

    static Jet constant(BasisPtr basis, T c) {
        Jet j(std::move(basis));
        if (!coeff_is_zero(c)) j.terms_.emplace_back(0u, std::move(c));
        return j;
    }
    static Jet variable(BasisPtr basis, int var, T c = T(1.0)) {
        if (var < 0 || var >= basis->nvars()) throw UsageError("jet variable index out of range");
        Jet j(basis);
        if (basis->max_degree() >= 1 && !coeff_is_zero(c)) {
            j.terms_.emplace_back(static_cast<std::uint32_t>(basis->variable(var)), std::move(c));
        }
        return j;
    }
    /// Builds from (index, coefficient) pairs in any order; duplicates add.
    static Jet from_terms(BasisPtr basis, std::vector<Term> terms);

    const BasisPtr& basis() const { return basis_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int nvars() const { return basis_->nvars(); }
    int max_degree() const { return basis_->max_degree(); }

    T coeff(std::size_t index) const;
    T coeff(const Exponents& e) const;
    T constant_term() const { return coeff(std::size_t{0}); }
    /// Highest degree present, -1 for the zero jet.
    int degree() const { return terms_.empty() ? -1 : basis_->degree(terms_.back().first); }

    Jet homogeneous(int d) const;
    Jet truncated(int d) const;
    Jet without_constant() const;

    /// Applies f to every coefficient; f may change the coefficient type.
    template <class F>
    auto map(F&& f) const -> Jet<std::decay_t<decltype(f(std::declval<const T&>()))>>;

    /// Same coefficients expressed in another basis (monomials above its
    /// degree are dropped).
    Jet rebased(const BasisPtr& other) const;

    Jet& operator+=(const Jet& o);
    Jet& operator-=(const Jet& o);
    Jet& operator*=(double s);
    Jet& operator+=(double s) { return add_constant(T(s)); }
    Jet& add_constant(const T& c);
    /// Multiplies every coefficient by c (coefficient-ring scaling).
    Jet scaled(const T& c) const;

    friend Jet operator+(Jet a, const Jet& b) { return a += b; }
    friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
    friend Jet operator-(Jet a) { return a *= -1.0; }
    friend Jet operator*(Jet a, double s) { return a *= s; }
    friend Jet operator*(double s, Jet a) { return a *= s; }
    friend Jet operator+(Jet a, double s) { return a += s; }
    friend Jet operator+(double s, Jet a) { return a += s; }
    friend Jet operator-(Jet a, double s) { return a += -s; }
    friend Jet operator-(double s, Jet a) {
        a *= -1.0;
        return a += s;
    }
    friend Jet operator*(const Jet& a, const Jet& b) { return multiply(a, b); }
    friend Jet operator/(const Jet& a, const Jet& b) { return multiply(a, recip(b)); }
    friend Jet operator/(Jet a, double s) { return a *= 1.0 / s; }
    friend Jet operator/(double s, const Jet& b) { return recip(b) * s; }

    static Jet multiply(const Jet& a, const Jet& b);

private:
    void check_same_basis(const Jet& o) const {
        if (basis_ != o.basis_) {
            if (!basis_ || !o.basis_ || basis_->nvars() != o.basis_->nvars() ||
                basis_->max_degree() != o.basis_->max_degree()) {
                throw UsageError("jet operands have mismatched nvars/max_degree");
            }
        }
    }
    void combine(const Jet& o, double sign);

    BasisPtr basis_;
    std::vector<Term> terms_;

    template <class U>
    friend class Jet;
};

// ---------------------------------------------------------------------------
// Implementation

template <class T>
Jet<T> Jet<T>::from_terms(BasisPtr basis, std::vector<Term> terms) {
    std::vector<T> dense(basis->size(), T(0.0));
    std::vector<char> used(basis->size(), 0);
    for (auto& [idx, c] : terms) {
        dense[idx] += c;
        used[idx] = 1;
    }
    Jet j(std::move(basis));
    for (std::size_t i = 0; i < dense.size(); ++i) {
        if (used[i] && !coeff_is_zero(dense[i])) {
            j.terms_.emplace_back(static_cast<std::uint32_t>(i), std::move(dense[i]));
        }
    }
    return j;
}

template <class T>
T Jet<T>::coeff(std::size_t index) const {
    for (const auto& [idx, c] : terms_) {
        if (idx == index) return c;
        if (idx > index) break;
    }
    return T(0.0);
}

template <class T>
T Jet<T>::coeff(const Exponents& e) const {
    const auto idx = basis_->find(e);
    return idx ? coeff(*idx) : T(0.0);
}

template <class T>
Jet<T> Jet<T>::homogeneous(int d) const {
    Jet r(basis_);
    for (const auto& t : terms_) {
        if (basis_->degree(t.first) == d) r.terms_.push_back(t);
    }
    return r;
}

template <class T>
Jet<T> Jet<T>::truncated(int d) const {
    Jet r(basis_);
    for (const auto& t : terms_) {
        if (basis_->degree(t.first) <= d) r.terms_.push_back(t);
    }
    return r;
}

template <class T>
Jet<T> Jet<T>::without_constant() const {
    Jet r(basis_);
    for (const auto& t : terms_) {
        if (t.first != 0) r.terms_.push_back(t);
    }
    return r;
}

template <class T>
template <class F>
auto Jet<T>::map(F&& f) const -> Jet<std::decay_t<decltype(f(std::declval<const T&>()))>> {
    using U = std::decay_t<decltype(f(std::declval<const T&>()))>;
    Jet<U> r(basis_);
    for (const auto& [idx, c] : terms_) {
        U v = f(c);
        if (!coeff_is_zero(v)) r.terms_.emplace_back(idx, std::move(v));
    }
    return r;
}

template <class T>
Jet<T> Jet<T>::rebased(const BasisPtr& other) const {
    if (other == basis_) return *this;
    if (other->nvars() < basis_->nvars()) throw UsageError("rebase target has fewer variables");
    std::vector<Term> out;
    for (const auto& [idx, c] : terms_) {
        if (basis_->degree(idx) > other->max_degree()) continue;
        const auto j = other->find(basis_->exponents(idx));
        out.emplace_back(static_cast<std::uint32_t>(*j), c);
    }
    return from_terms(other, std::move(out));
}

template <class T>
void Jet<T>::combine(const Jet& o, double sign) {
    if (!basis_) {
        basis_ = o.basis_;
    } else if (o.basis_) {
        check_same_basis(o);
    }
    std::vector<Term> out;
    out.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() || b != o.terms_.end()) {
        if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
            out.push_back(std::move(*a++));
        } else if (a == terms_.end() || b->first < a->first) {
            out.emplace_back(b->first, b->second * sign);
            ++b;
        } else {
            T v = std::move(a->second);
            if (sign > 0) v += b->second; else v -= b->second;
            if (!coeff_is_zero(v)) out.emplace_back(a->first, std::move(v));
            ++a;
            ++b;
        }
    }
    terms_ = std::move(out);
}

template <class T>
Jet<T>& Jet<T>::operator+=(const Jet& o) {
    combine(o, 1.0);
    return *this;
}

template <class T>
Jet<T>& Jet<T>::operator-=(const Jet& o) {
    combine(o, -1.0);
    return *this;
}

template <class T>
Jet<T>& Jet<T>::operator*=(double s) {
    if (s == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.second *= s;
    return *this;
}

template <class T>
Jet<T>& Jet<T>::add_constant(const T& c) {
    if (coeff_is_zero(c)) return *this;
    if (!terms_.empty() && terms_.front().first == 0) {
        terms_.front().second += c;
        if (coeff_is_zero(terms_.front().second)) terms_.erase(terms_.begin());
    } else {
        terms_.insert(terms_.begin(), Term{0u, c});
    }
    return *this;
}

template <class T>
Jet<T> Jet<T>::scaled(const T& c) const {
    return map([&](const T& v) {
        T r(0.0);
        accumulate_product(r, v, c);
        return r;
    });
}

template <class T>
Jet<T> Jet<T>::multiply(const Jet& a, const Jet& b) {
    if (!a.basis_) return Jet(b.basis_);
    if (!b.basis_) return Jet(a.basis_);
    a.check_same_basis(b);
    const MonomialBasis& basis = *a.basis_;
    const int dmax = basis.max_degree();
    Jet r(a.basis_);
    if (a.terms_.empty() || b.terms_.empty()) return r;

    std::vector<T> acc(basis.size(), T(0.0));
    std::vector<char> used(basis.size(), 0);
    for (const auto& [ia, ca] : a.terms_) {
        const std::size_t limit = basis.degree_begin(dmax - basis.degree(ia) + 1);
        for (const auto& [ib, cb] : b.terms_) {
            if (ib >= limit) break;
            const std::uint32_t k = basis.product(ia, ib);
            accumulate_product(acc[k], ca, cb);
            used[k] = 1;
        }
    }
    for (std::size_t i = 0; i < acc.size(); ++i) {
        if (used[i] && !coeff_is_zero(acc[i])) {
            r.terms_.emplace_back(static_cast<std::uint32_t>(i), std::move(acc[i]));
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Series composition about the constant term: f(c + h) = sum_k a_k h^k, where
// h has no constant part, so h^k vanishes for k > max_degree.

template <class T>
Jet<T> compose_series(const Jet<T>& a, const std::vector<double>& taylor) {
    const Jet<T> h = a.without_constant();
    Jet<T> result = Jet<T>::constant(a.basis(), T(taylor[0]));
    Jet<T> power = Jet<T>::constant(a.basis(), T(1.0));
    for (std::size_t k = 1; k < taylor.size() && static_cast<int>(k) <= a.max_degree(); ++k) {
        power = power * h;
        if (power.is_zero()) break;
        result += power * taylor[k];
    }
    return result;
}

/// Truncated reciprocal; the constant term must be nonzero.
template <class T>
Jet<T> recip(const Jet<T>& a) {
    const double c = constant_value(a.constant_term());
    if (c == 0.0) throw DomainError("jet reciprocal of a zero constant term");
    std::vector<double> t(static_cast<std::size_t>(a.max_degree()) + 1);
    double ck = 1.0 / c;
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = (k % 2 == 0 ? 1.0 : -1.0) * ck;
        ck /= c;
    }
    return compose_series(a, t);
}

/// Truncated square root; the constant term must be positive.
template <class T>
Jet<T> sqrt(const Jet<T>& a) {
    const double c = constant_value(a.constant_term());
    if (!(c > 0.0)) throw DomainError("jet sqrt requires a positive constant term");
    std::vector<double> t(static_cast<std::size_t>(a.max_degree()) + 1);
    // binom(1/2, k) c^(1/2 - k)
    double binom = 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        t[k] = binom * std::sqrt(c) / std::pow(c, static_cast<double>(k));
        binom *= (0.5 - static_cast<double>(k)) / static_cast<double>(k + 1);
    }
    return compose_series(a, t);
}

template <class T>
Jet<T> sin(const Jet<T>& a) {
    const double c = constant_value(a.constant_term());
    std::vector<double> t(static_cast<std::size_t>(a.max_degree()) + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        // k-th derivative of sin at c
        const double d = (k % 4 == 0) ? std::sin(c) : (k % 4 == 1) ? std::cos(c)
                       : (k % 4 == 2) ? -std::sin(c) : -std::cos(c);
        t[k] = d / fact;
    }
    return compose_series(a, t);
}

template <class T>
Jet<T> cos(const Jet<T>& a) {
    const double c = constant_value(a.constant_term());
    std::vector<double> t(static_cast<std::size_t>(a.max_degree()) + 1);
    double fact = 1.0;
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k > 0) fact *= static_cast<double>(k);
        const double d = (k % 4 == 0) ? std::cos(c) : (k % 4 == 1) ? -std::sin(c)
                       : (k % 4 == 2) ? -std::cos(c) : std::sin(c);
        t[k] = d / fact;
    }
    return compose_series(a, t);
}

/// Formal partial derivatives d/dx_v for every variable (degree drops by one).
template <class T>
std::vector<Jet<T>> gradient(const Jet<T>& a) {
    const MonomialBasis& basis = *a.basis();
    std::vector<std::vector<typename Jet<T>::Term>> parts(static_cast<std::size_t>(basis.nvars()));
    for (const auto& [idx, c] : a.terms()) {
        const Exponents& e = basis.exponents(idx);
        for (int v = 0; v < basis.nvars(); ++v) {
            if (e[static_cast<std::size_t>(v)] == 0) continue;
            const auto low = basis.lowered(idx, v);
            parts[static_cast<std::size_t>(v)].emplace_back(static_cast<std::uint32_t>(low),
                                                            c * static_cast<double>(e[static_cast<std::size_t>(v)]));
        }
    }
    std::vector<Jet<T>> out;
    out.reserve(parts.size());
    for (auto& p : parts) out.push_back(Jet<T>::from_terms(a.basis(), std::move(p)));
    return out;
}

/// Evaluates the jet at a point (one value per variable).
template <class T>
T evaluate(const Jet<T>& a, std::span<const double> point) {
    const MonomialBasis& basis = *a.basis();
    if (static_cast<int>(point.size()) != basis.nvars()) throw UsageError("jet evaluation point has wrong size");
    T acc(0.0);
    for (const auto& [idx, c] : a.terms()) {
        const Exponents& e = basis.exponents(idx);
        double m = 1.0;
        for (int v = 0; v < basis.nvars(); ++v) {
            for (int k = 0; k < e[static_cast<std::size_t>(v)]; ++k) m *= point[static_cast<std::size_t>(v)];
        }
        acc += c * m;
    }
    return acc;
}

// Named forms of the ring operations.
template <class T>
Jet<T> jet_add(const Jet<T>& a, const Jet<T>& b) { return a + b; }
template <class T>
Jet<T> jet_mul(const Jet<T>& a, const Jet<T>& b) { return a * b; }
template <class T>
Jet<T> jet_sqrt(const Jet<T>& a) { return sqrt(a); }
template <class T>
Jet<T> jet_recip(const Jet<T>& a) { return recip(a); }
template <class T>
std::vector<Jet<T>> jet_gradient_coeffs(const Jet<T>& a) { return gradient(a); }

/// Human-readable monomial, e.g. "X_b^2*Phi_zb"; "1" for the constant.
std::string monomial_name(const Exponents& e, int nvars, std::span<const std::string> var_names);

}  // namespace cosserat
