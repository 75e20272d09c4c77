#include "cosserat/section.hpp"

#include "cosserat/errors.hpp"

namespace cosserat {

SectionProperties section_from_integrals(double A, double eta2, double xi2, const Material& mat) {
    if (!(A > 0.0) || !(eta2 > 0.0) || !(xi2 > 0.0)) {
        throw ConfigurationError("section area and second moments must be positive");
    }
    if (!(mat.E > 0.0) || !(mat.G > 0.0) || !(mat.rho > 0.0)) {
        throw ConfigurationError("material E, G and rho must be positive");
    }
    SectionProperties s;
    s.A = A;
    s.K33 = mat.E * A;
    s.J11 = mat.E * eta2;
    s.J22 = mat.E * xi2;
    s.J33 = mat.G * (eta2 + xi2);
    s.I11 = mat.rho * eta2;
    s.I22 = mat.rho * xi2;
    s.I33 = s.I11 + s.I22;
    s.mu = mat.rho * A;
    return s;
}

SectionProperties rect_section(double B, double D, const Material& mat) {
    if (!(B > 0.0) || !(D > 0.0)) throw ConfigurationError("section width and thickness must be positive");
    return section_from_integrals(B * D, B * D * D * D / 12.0, D * B * B * B / 12.0, mat);
}

double shear_modulus_default(double E, double nu_poisson) {
    return E / (2.0 * (1.0 + nu_poisson));
}

}  // namespace cosserat
