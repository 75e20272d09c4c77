#include <doctest.h>

#include "cosserat/errors.hpp"
#include "cosserat/section.hpp"

using namespace cosserat;

TEST_CASE("rectangular section properties") {
    const Material m{2.08e8, 8e7, 3000.0};
    const double B = 0.01;
    const double D = 0.005;
    const SectionProperties s = rect_section(B, D, m);
    CHECK(s.A == doctest::Approx(5e-5));
    CHECK(s.K33 == doctest::Approx(2.08e8 * 5e-5));
    // bending about d1 uses the thickness, about d2 the width
    CHECK(s.J11 == doctest::Approx(2.08e8 * B * D * D * D / 12));
    CHECK(s.J22 == doctest::Approx(2.08e8 * D * B * B * B / 12));
    CHECK(s.J33 == doctest::Approx(8e7 * (B * D * D * D + D * B * B * B) / 12));
    CHECK(s.I11 == doctest::Approx(3000.0 * B * D * D * D / 12));
    CHECK(s.I22 == doctest::Approx(3000.0 * D * B * B * B / 12));
    CHECK(s.I33 == doctest::Approx(s.I11 + s.I22));
    CHECK(s.mu == doctest::Approx(0.15));
}

TEST_CASE("square section is isotropic in bending") {
    const SectionProperties s = rect_section(0.02, 0.02, {1e9, 4e8, 1000.0});
    CHECK(s.J11 == doctest::Approx(s.J22));
    CHECK(s.I11 == doctest::Approx(s.I22));
}

TEST_CASE("default shear modulus") {
    CHECK(shear_modulus_default(2.6, 0.3) == doctest::Approx(1.0));
    CHECK(shear_modulus_default(2.0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("invalid sections are rejected") {
    const Material m{2.08e8, 8e7, 3000.0};
    CHECK_THROWS_AS(rect_section(0.0, 0.005, m), ConfigurationError);
    CHECK_THROWS_AS(rect_section(0.01, -1.0, m), ConfigurationError);
    CHECK_THROWS_AS(rect_section(0.01, 0.005, {0.0, 1.0, 1.0}), ConfigurationError);
    CHECK_THROWS_AS(section_from_integrals(1.0, 0.0, 1.0, m), ConfigurationError);
}
