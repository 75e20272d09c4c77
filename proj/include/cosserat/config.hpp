#pragma once

// Run configuration: a JSON document with "version": 1. Unknown keys are
// rejected at every level; the only defaults are nu_poisson = 0.3,
// integrator.tol = 1e-8 and integrator.output_dt = 1e-3.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "cosserat/section.hpp"
#include "cosserat/system.hpp"

namespace cosserat {

struct GeometryConfig {
    double length = 0.0;
    double width = 0.0;
    double thickness = 0.0;
};

struct MaterialConfig {
    double E = 0.0;
    double rho = 0.0;
    double nu_poisson = 0.3;
};

struct RestraintConfig {
    int node = 0;  // -1 stands for the last node
    std::vector<int> dofs;
};

struct LoadConfig {
    int node = -1;
    int dof = 0;
    double amplitude = 0.0;
    double frequency = 0.0;
    double phase = 0.0;
    Waveform kind = Waveform::kCos;
};

/// Uniform load per unit length on every element; component 0..2 force
/// x, y, z, 3..5 torque about x, y, z.
struct DistributedConfig {
    int component = 0;
    double amplitude = 0.0;
};

struct IntegratorConfig {
    double t_end = 0.0;
    double tol = 1e-8;
    double output_dt = 1e-3;
};

struct RunConfig {
    GeometryConfig geometry;
    MaterialConfig material;
    int elements = 0;
    std::vector<RestraintConfig> restraints;
    std::vector<LoadConfig> loads;
    std::vector<DistributedConfig> distributed;
    std::optional<IntegratorConfig> integrator;

    Material material_law() const;
    SectionProperties section() const;
    double element_length() const { return geometry.length / elements; }
    /// Uniform mesh with the configured restraints applied.
    Mesh mesh() const;
    Loading loading(const Mesh& mesh) const;
};

/// Throws ConfigurationError naming the offending field (and the line for
/// syntax errors).
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// DOF name to local index: X Y Z Phi_x Phi_y Phi_z.
std::optional<int> dof_index(const std::string& name);

}  // namespace cosserat
