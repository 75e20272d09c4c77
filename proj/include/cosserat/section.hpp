#pragma once

namespace cosserat {

struct Material {
    double E = 0.0;    // Pa
    double G = 0.0;    // Pa
    double rho = 0.0;  // kg/m^3
};

/// Stiffness and inertia of a cross-section in principal axes. J11, I11
/// refer to bending about d1 (deflection along d2), J22, I22 to bending
/// about d2 (deflection along d1).
struct SectionProperties {
    double A = 0.0;
    double K33 = 0.0;
    double J11 = 0.0;
    double J22 = 0.0;
    double J33 = 0.0;
    double I11 = 0.0;
    double I22 = 0.0;
    double I33 = 0.0;
    double mu = 0.0;

    bool operator==(const SectionProperties&) const = default;
};

/// Rectangle of width B (along d1) and thickness D (along d2).
SectionProperties rect_section(double B, double D, const Material& mat);

/// Generic section from area and second moments: eta2 = int eta^2 dA
/// (eta along d2), xi2 = int xi^2 dA (xi along d1).
SectionProperties section_from_integrals(double A, double eta2, double xi2, const Material& mat);

double shear_modulus_default(double E, double nu_poisson);

}  // namespace cosserat
