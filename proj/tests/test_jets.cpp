#include <doctest.h>

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "cosserat/dual.hpp"
#include "cosserat/errors.hpp"
#include "cosserat/jet.hpp"
#include "cosserat/poly.hpp"
#include "support.hpp"

using namespace cosserat;

namespace {

Exponents ex(std::initializer_list<int> e) {
    Exponents out{};
    std::size_t i = 0;
    for (int v : e) out[i++] = static_cast<std::uint8_t>(v);
    return out;
}

double binomial(int n, int k) {
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

TEST_CASE("basis enumerates all monomials up to the degree") {
    for (int n : {1, 3, 6, 12}) {
        for (int d : {0, 2, 4}) {
            const BasisPtr b = MonomialBasis::get(n, d);
            CHECK(b->size() == static_cast<std::size_t>(binomial(n + d, d)));
            CHECK(b->degree_begin(d + 1) == b->size());
        }
    }
    CHECK(MonomialBasis::get(3, 2) == MonomialBasis::get(3, 2));
}

TEST_CASE("products truncate at the basis degree") {
    const BasisPtr b = MonomialBasis::get(2, 3);
    const Jet<double> x = Jet<double>::variable(b, 0);
    const Jet<double> y = Jet<double>::variable(b, 1);
    const Jet<double> p = (1.0 + x) * (1.0 - x);
    CHECK(p.coeff(ex({0, 0})) == 1.0);
    CHECK(p.coeff(ex({2, 0})) == -1.0);
    CHECK(p.coeff(ex({1, 0})) == 0.0);
    const Jet<double> q = x * x * y * y;  // degree 4 drops out
    CHECK(q.is_zero());
    CHECK((x * y).degree() == 2);
}

TEST_CASE("univariate series coefficients") {
    const BasisPtr b = MonomialBasis::get(1, 8);
    const Jet<double> x = Jet<double>::variable(b, 0);
    const Jet<double> r = recip(1.0 + x);
    const Jet<double> s = sin(x);
    const Jet<double> c = cos(x);
    const Jet<double> q = sqrt(1.0 + x);
    double fact = 1.0;
    double binom = 1.0;
    for (int k = 0; k <= 8; ++k) {
        if (k > 0) fact *= k;
        const Exponents e = ex({k});
        CHECK(r.coeff(e) == doctest::Approx(k % 2 == 0 ? 1.0 : -1.0));
        const double sk = k % 2 == 1 ? ((k / 2) % 2 == 0 ? 1.0 : -1.0) / fact : 0.0;
        const double ck = k % 2 == 0 ? ((k / 2) % 2 == 0 ? 1.0 : -1.0) / fact : 0.0;
        CHECK(s.coeff(e) == doctest::Approx(sk));
        CHECK(c.coeff(e) == doctest::Approx(ck));
        CHECK(q.coeff(e) == doctest::Approx(binom));
        binom *= (0.5 - k) / (k + 1);
    }
}

TEST_CASE("identities hold through the truncation degree") {
    const BasisPtr b = MonomialBasis::get(3, 5);
    const Jet<double> x = Jet<double>::variable(b, 0);
    const Jet<double> y = Jet<double>::variable(b, 1);
    const Jet<double> z = Jet<double>::variable(b, 2);
    const Jet<double> a = 0.7 + 0.3 * x - 0.2 * y * z + x * y;
    const Jet<double> one = sin(a) * sin(a) + cos(a) * cos(a) - 1.0;
    for (const auto& [i, c] : one.terms()) CHECK(std::abs(c) < 1e-14);
    const Jet<double> s = sqrt(a);
    const Jet<double> diff = s * s - a;
    for (const auto& [i, c] : diff.terms()) CHECK(std::abs(c) < 1e-14);
    const Jet<double> inv = a * recip(a) - 1.0;
    for (const auto& [i, c] : inv.terms()) CHECK(std::abs(c) < 1e-14);
}

TEST_CASE("evaluation and gradient of a polynomial") {
    const BasisPtr b = MonomialBasis::get(2, 4);
    const Jet<double> x = Jet<double>::variable(b, 0);
    const Jet<double> y = Jet<double>::variable(b, 1);
    const Jet<double> f = 3.0 * x * x * y - y * y + 2.0;
    const std::array<double, 2> p{0.5, -1.5};
    CHECK(evaluate(f, std::span<const double>(p)) == doctest::Approx(3 * 0.25 * -1.5 - 2.25 + 2));
    const std::vector<Jet<double>> g = gradient(f);
    REQUIRE(g.size() == 2);
    CHECK(evaluate(g[0], std::span<const double>(p)) == doctest::Approx(6 * 0.5 * -1.5));
    CHECK(evaluate(g[1], std::span<const double>(p)) == doctest::Approx(3 * 0.25 + 3.0));
}

TEST_CASE("jet evaluation matches the truncated Taylor series of a smooth function") {
    const BasisPtr b = MonomialBasis::get(2, 6);
    const Jet<double> x = Jet<double>::variable(b, 0);
    const Jet<double> y = Jet<double>::variable(b, 1);
    const Jet<double> f = sqrt(1.0 + x + 0.5 * y) * cos(x - y);
    for (double h : {1e-2, 5e-3}) {
        const std::array<double, 2> p{h, -0.7 * h};
        const double exact = std::sqrt(1.0 + p[0] + 0.5 * p[1]) * std::cos(p[0] - p[1]);
        CHECK(std::abs(evaluate(f, std::span<const double>(p)) - exact) < 10 * std::pow(h, 7));
    }
}

TEST_CASE("rebasing and homogeneous parts") {
    const BasisPtr small = MonomialBasis::get(2, 3);
    const BasisPtr big = MonomialBasis::get(3, 3);
    const Jet<double> x = Jet<double>::variable(small, 0);
    const Jet<double> f = 1.0 + x + x * x * x;
    const Jet<double> g = f.rebased(big);
    CHECK(g.coeff(ex({3, 0, 0})) == 1.0);
    CHECK(f.homogeneous(3).terms().size() == 1);
    CHECK(f.truncated(1).degree() == 1);
    CHECK(f.without_constant().constant_term() == 0.0);
}

TEST_CASE("errors") {
    const BasisPtr a = MonomialBasis::get(2, 3);
    const BasisPtr b = MonomialBasis::get(3, 3);
    const Jet<double> x = Jet<double>::variable(a, 0);
    const Jet<double> y = Jet<double>::variable(b, 0);
    CHECK_THROWS_AS(x + y, UsageError);
    CHECK_THROWS_AS(recip(x), DomainError);
    CHECK_THROWS_AS(sqrt(x - 1.0), DomainError);
    CHECK_THROWS_AS(Jet<double>::variable(a, 5), UsageError);
}

TEST_CASE("monomial names") {
    const std::array<std::string, 3> names{"a", "b", "c"};
    CHECK(monomial_name(ex({2, 0, 1}), 3, names) == "a^2*c");
    CHECK(monomial_name(ex({0, 0, 0}), 3, names) == "1");
}

TEST_CASE("polynomial arithmetic") {
    const Poly p{1.0, 2.0};       // 1 + 2s
    const Poly q{0.0, -1.0, 3.0};  // -s + 3s^2
    const Poly r = p * q;
    CHECK(r.coeffs() == std::vector<double>{0.0, -1.0, 1.0, 6.0});
    CHECK(r(2.0) == doctest::Approx(-2 + 4 + 48));
    CHECK(r.derivative().coeffs() == std::vector<double>{-1.0, 2.0, 18.0});
    CHECK((p - p).is_zero());
    Poly s{1.0, 1e-15};
    s.snap(1e-13);
    CHECK(s.degree() == 0);
}

TEST_CASE("dual numbers carry first derivatives") {
    const Dual<double> x{0.4, 1.0};
    const Dual<double> f = sin(x) * sqrt(x) + 1.0 / x;
    const double h = 1e-6;
    auto fd = [](double t) { return std::sin(t) * std::sqrt(t) + 1.0 / t; };
    CHECK(f.v == doctest::Approx(fd(0.4)));
    CHECK(f.d == doctest::Approx((fd(0.4 + h) - fd(0.4 - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("jets of polynomial coefficients") {
    const BasisPtr b = MonomialBasis::get(1, 2);
    const Jet<Poly> x = Jet<Poly>::variable(b, 0, Poly{0.0, 1.0});
    const Jet<Poly> y = x * x;
    CHECK(y.coeff(ex({2})).coeffs() == std::vector<double>{0.0, 0.0, 1.0});
}
