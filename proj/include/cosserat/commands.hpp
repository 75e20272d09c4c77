#pragma once

#include <filesystem>
#include <optional>

#include "cosserat/config.hpp"

namespace cosserat {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitIntegrator = 3;
inline constexpr int kExitOracle = 4;

struct CommandOptions {
    std::filesystem::path out = ".";
    std::optional<int> elements;  // overrides mesh.elements
    int order = 3;                // shapefn
    bool phase_plane = false;     // simulate
    int sweep = 0;                // modal: element counts 1..sweep
    bool plot_script = false;
};

/// Each command writes its CSV files into opts.out and returns an exit code.
/// ConfigurationError and IntegratorError propagate to the caller.
int cmd_modal(RunConfig cfg, const CommandOptions& opts);
int cmd_simulate(RunConfig cfg, const CommandOptions& opts);
int cmd_shapefn(RunConfig cfg, const CommandOptions& opts);
int cmd_element_dump(RunConfig cfg, const CommandOptions& opts);
int cmd_verify_appendix(RunConfig cfg, const CommandOptions& opts);

}  // namespace cosserat
