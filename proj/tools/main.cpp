#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cosserat/commands.hpp"
#include "cosserat/config.hpp"
#include "cosserat/errors.hpp"

int main(int argc, char** argv) {
    using namespace cosserat;
    CLI::App app{"Cosserat rod finite elements: modal analysis, dynamics and operator dumps"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    CommandOptions opts;
    std::string out = ".";
    int elements = 0;
    long long seed = 0;
    app.add_option("--config", config_path, "JSON run configuration")->required();
    app.add_option("--out", out, "Output directory")->capture_default_str();
    app.add_option("--elements", elements, "Override mesh.elements");
    app.add_option("--seed", seed, "Accepted for interface compatibility; unused");

    CLI::App* modal = app.add_subcommand("modal", "Natural frequencies and mode planes");
    modal->add_option("--sweep", opts.sweep, "Also write a convergence table for 1..N elements");
    CLI::App* simulate = app.add_subcommand("simulate", "Forced response of the free end");
    simulate->add_flag("--phase-plane", opts.phase_plane, "Also write Y, dY/dt of the free end");
    CLI::App* shapefn = app.add_subcommand("shapefn", "Shape-function coefficient tables");
    shapefn->add_option("--order", opts.order, "Highest order (1..3)")->capture_default_str();
    CLI::App* dump = app.add_subcommand("element-dump", "Element mass, stiffness and nonlinear force terms");
    CLI::App* verify = app.add_subcommand("verify-appendix", "Compare the element against closed-form tables");
    for (CLI::App* sub : {modal, simulate, shapefn}) {
        sub->add_flag("--plot-script", opts.plot_script, "Write plot.py next to the data");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }
    opts.out = out;
    if (app.count("--elements")) opts.elements = elements;

    try {
        RunConfig cfg = load_config(config_path);
        if (*modal) return cmd_modal(cfg, opts);
        if (*simulate) return cmd_simulate(cfg, opts);
        if (*shapefn) return cmd_shapefn(cfg, opts);
        if (*dump) return cmd_element_dump(cfg, opts);
        if (*verify) {
            const int rc = cmd_verify_appendix(cfg, opts);
            if (rc == kExitOracle) std::cerr << "verify-appendix: non-flagged entries differ from the oracle\n";
            return rc;
        }
    } catch (const ConfigurationError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegratorError& e) {
        std::cerr << "integrator failure: " << e.what() << " (last good time " << e.last_good_time << " s)\n";
        return kExitIntegrator;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}
