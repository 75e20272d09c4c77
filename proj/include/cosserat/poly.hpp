#pragma once

#include <initializer_list>
#include <string>
#include <vector>

namespace cosserat {

/// Dense univariate polynomial in the element coordinate sigma.
/// coeffs()[k] multiplies sigma^k; trailing zeros are trimmed.
class Poly {
public:
    Poly() = default;
    explicit Poly(double c);
    Poly(std::initializer_list<double> coeffs);
    explicit Poly(std::vector<double> coeffs);

    static Poly monomial(int power, double c = 1.0);

    const std::vector<double>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    double coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : 0.0; }
    double max_abs() const;

    double operator()(double sigma) const;
    Poly derivative() const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(double s);
    /// this += a * b, without temporaries.
    void add_product(const Poly& a, const Poly& b);

    /// Zero out coefficients with |c| <= tol and trim.
    void snap(double tol);

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(Poly a, double s) { return a *= s; }
    friend Poly operator*(double s, Poly a) { return a *= s; }
    friend Poly operator-(Poly a) { return a *= -1.0; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    void trim();
    std::vector<double> c_;
};

}  // namespace cosserat
