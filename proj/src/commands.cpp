#include "cosserat/commands.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include "cosserat/appendix.hpp"
#include "cosserat/csv.hpp"
#include "cosserat/errors.hpp"
#include "cosserat/shapefn.hpp"

namespace cosserat {

namespace {

namespace fs = std::filesystem;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void prepare(RunConfig& cfg, const CommandOptions& opts) {
    if (opts.elements) {
        if (*opts.elements < 1 || *opts.elements > 100) throw ConfigurationError("--elements: must be in 1..100");
        cfg.elements = *opts.elements;
    }
    std::error_code ec;
    fs::create_directories(opts.out, ec);
    if (ec) throw ConfigurationError(opts.out.string() + ": " + ec.message());
}

std::string str(double x) { return format_double(x); }
std::string str(int x) { return std::to_string(x); }

struct PlaneModes {
    std::string plane;
    std::vector<double> omega;
    std::vector<double> cbt;
};

std::vector<Mode> modes_for(const RunConfig& cfg) {
    BuildOptions bo;
    bo.nonlinear = false;
    const GlobalSystem sys = build_system(cfg.mesh(), bo);
    const FreeSystem fsys(sys);
    return modal(fsys);
}

// Cantilever reference frequency for the k-th mode (0-based) of a flexural
// plane, NaN otherwise.
double cbt_for(const RunConfig& cfg, const std::string& plane, int k) {
    const SectionProperties sec = cfg.section();
    double EI = 0.0;
    if (plane == "e2-e3") EI = sec.J11;
    if (plane == "e1-e3") EI = sec.J22;
    if (EI == 0.0) return kNaN;
    return cbt_frequencies(cfg.geometry.length, EI, sec.mu, k + 1).back();
}

double rel_err_pct(double omega, double cbt) { return std::isnan(cbt) ? kNaN : 100.0 * std::abs(omega - cbt) / cbt; }

void write_plot_script(const fs::path& out, const std::vector<std::string>& lines) {
    std::ofstream f(out / "plot.py", std::ios::binary | std::ios::trunc);
    if (!f) throw ConfigurationError((out / "plot.py").string() + ": cannot open for writing");
    f << "import csv\nimport matplotlib.pyplot as plt\n\n"
         "def load(name):\n"
         "    with open(name) as f:\n"
         "        rows = list(csv.DictReader(f))\n"
         "    return {k: [float(r[k]) if r[k] not in ('', 'nan') else float('nan') for r in rows] for k in rows[0]}\n\n";
    for (const std::string& l : lines) f << l << '\n';
    f << "plt.show()\n";
}

const std::array<const char*, 4>& field_names() {
    static const std::array<const char*, 4> n{"x", "y", "z", "varphi"};
    return n;
}

}  // namespace

int cmd_modal(RunConfig cfg, const CommandOptions& opts) {
    prepare(cfg, opts);
    const std::vector<Mode> modes = modes_for(cfg);
    CsvWriter w(opts.out / "modal.csv", {"mode", "omega_rad_s", "plane", "cbt_omega", "rel_err_pct"});
    std::map<std::string, int> seen;
    for (std::size_t i = 0; i < modes.size(); ++i) {
        const Mode& m = modes[i];
        const double cbt = cbt_for(cfg, m.plane, seen[m.plane]++);
        w.row({str(static_cast<int>(i) + 1), str(m.omega), m.plane, str(cbt), str(rel_err_pct(m.omega, cbt))});
    }
    w.close();

    if (opts.sweep > 0) {
        CsvWriter s(opts.out / "convergence.csv",
                    {"elements", "plane", "mode", "omega_rad_s", "cbt_omega", "rel_err_pct"});
        for (int ne = 1; ne <= opts.sweep; ++ne) {
            RunConfig c = cfg;
            c.elements = ne;
            std::map<std::string, int> count;
            for (const Mode& m : modes_for(c)) {
                if (m.plane != "e1-e3" && m.plane != "e2-e3") continue;
                const int k = count[m.plane]++;
                if (k >= 5) continue;
                const double cbt = cbt_for(c, m.plane, k);
                s.row({str(ne), m.plane, str(k + 1), str(m.omega), str(cbt), str(rel_err_pct(m.omega, cbt))});
            }
        }
        s.close();
    }
    if (opts.plot_script) {
        std::vector<std::string> lines{"m = load('modal.csv')",
                                       "plt.figure()",
                                       "plt.semilogy(m['mode'], m['omega_rad_s'], 'o')",
                                       "plt.xlabel('mode')",
                                       "plt.ylabel('omega [rad/s]')"};
        if (opts.sweep > 0) {
            lines.insert(lines.end(), {"c = load('convergence.csv')",
                                       "plt.figure()",
                                       "for mode in (1, 2, 3):",
                                       "    with open('convergence.csv') as f:",
                                       "        rows = [r for r in csv.DictReader(f) if r['plane'] == 'e2-e3' and int(r['mode']) == mode]",
                                       "    plt.plot([int(r['elements']) for r in rows], [float(r['rel_err_pct']) for r in rows], 'o-', label=f'mode {mode}')",
                                       "plt.xlabel('elements')",
                                       "plt.ylabel('error vs CBT [%]')",
                                       "plt.legend()"});
        }
        write_plot_script(opts.out, lines);
    }
    return kExitOk;
}

int cmd_simulate(RunConfig cfg, const CommandOptions& opts) {
    prepare(cfg, opts);
    if (!cfg.integrator) throw ConfigurationError("integrator: required by simulate");
    const Mesh mesh = cfg.mesh();
    const Loading loads = cfg.loading(mesh);
    const GlobalSystem sys = build_system(mesh);
    const FreeSystem fsys(sys);
    IntegrateOptions io;
    io.t_end = cfg.integrator->t_end;
    io.tol = cfg.integrator->tol;
    io.output_dt = cfg.integrator->output_dt;
    const Eigen::VectorXd zero = Eigen::VectorXd::Zero(fsys.size());
    const TimeSeries ts = integrate(fsys, loads, zero, zero, io);

    const int tip = mesh.node_count() - 1;
    CsvWriter w(opts.out / "simulate.csv", {"t", "X_b", "Y_b", "Z_b", "Phi_xb", "Phi_yb", "Phi_zb"});
    std::optional<CsvWriter> pp;
    if (opts.phase_plane) pp.emplace(opts.out / "phase_plane.csv", std::vector<std::string>{"Y", "Ydot"});
    for (std::size_t k = 0; k < ts.t.size(); ++k) {
        const Eigen::VectorXd q = fsys.expand(ts.q[k]);
        std::vector<std::string> row{str(ts.t[k])};
        for (int d = 0; d < kNodeDofs; ++d) row.push_back(str(q(global_dof(tip, d))));
        w.row(row);
        if (pp) {
            const Eigen::VectorXd v = fsys.expand(ts.v[k]);
            pp->row({str(q(global_dof(tip, 1))), str(v(global_dof(tip, 1)))});
        }
    }
    w.close();
    if (pp) pp->close();
    if (opts.plot_script) {
        std::vector<std::string> lines{"s = load('simulate.csv')",
                                       "plt.figure()",
                                       "plt.plot(s['t'], s['X_b'], label='X_b')",
                                       "plt.plot(s['t'], s['Y_b'], label='Y_b')",
                                       "plt.xlabel('t [s]')",
                                       "plt.ylabel('tip displacement [m]')",
                                       "plt.legend()"};
        if (opts.phase_plane) {
            lines.insert(lines.end(), {"p = load('phase_plane.csv')", "plt.figure()", "plt.plot(p['Y'], p['Ydot'])",
                                       "plt.xlabel('Y [m]')", "plt.ylabel('dY/dt [m/s]')"});
        }
        write_plot_script(opts.out, lines);
    }
    return kExitOk;
}

int cmd_shapefn(RunConfig cfg, const CommandOptions& opts) {
    prepare(cfg, opts);
    if (opts.order < 1 || opts.order > 3) throw ConfigurationError("--order: must be 1, 2 or 3");
    const ShapeSolution sh = jet_shape(cfg.section(), cfg.element_length(), opts.order);
    const auto& names = element_dof_names();
    CsvWriter w(opts.out / "shapefn.csv", {"field", "order", "sigma_power", "monomial", "coefficient"});
    for (int f = 0; f < 4; ++f) {
        for (int k = 1; k <= opts.order; ++k) {
            const PolyJet& part = sh.parts[static_cast<std::size_t>(f)][static_cast<std::size_t>(k - 1)];
            for (const auto& [idx, poly] : part.terms()) {
                const std::string mono = monomial_name(sh.basis->exponents(idx), kElementDofs, names);
                const auto& c = poly.coeffs();
                for (std::size_t p = 0; p < c.size(); ++p) {
                    if (c[p] == 0.0) continue;
                    w.row({field_names()[static_cast<std::size_t>(f)], str(k), str(static_cast<int>(p)), mono, str(c[p])});
                }
            }
        }
    }
    w.close();
    if (opts.plot_script) {
        write_plot_script(opts.out, {"with open('shapefn.csv') as f:",
                                     "    rows = list(csv.DictReader(f))",
                                     "plt.figure()",
                                     "plt.hist([int(r['sigma_power']) for r in rows], bins=range(0, 12))",
                                     "plt.xlabel('sigma power')",
                                     "plt.ylabel('terms')"});
    }
    return kExitOk;
}

int cmd_element_dump(RunConfig cfg, const CommandOptions& opts) {
    prepare(cfg, opts);
    const double l = cfg.element_length();
    const ElementOperators ops = build_element(cfg.section(), l);
    const CantileverOracle oracle = appendix_oracle(cfg.section(), l);
    const std::vector<ComparisonRow> cmp = compare_with_appendix(ops, oracle);
    const auto& names = element_dof_names();

    CsvWriter w(opts.out / "element_dump.csv", {"name", "computed", "oracle", "rel_err", "status"});
    auto matrix = [&](const char* name, const Mat12& A) {
        for (int i = 0; i < kElementDofs; ++i) {
            for (int j = i; j < kElementDofs; ++j) {
                std::string status = "unlisted";
                double ref = kNaN;
                double err = kNaN;
                if (i >= 6 && j >= 6) {
                    const std::string key = std::string(name) + "(" + std::to_string(i - 5) + "," + std::to_string(j - 5) + ")";
                    for (const ComparisonRow& r : cmp) {
                        if (r.name != key) continue;
                        ref = r.oracle;
                        err = r.rel_err;
                        status = r.status;
                    }
                }
                w.row({std::string(name) + "(" + names[static_cast<std::size_t>(i)] + "," +
                           names[static_cast<std::size_t>(j)] + ")",
                       str(A(i, j)), str(ref), str(err), status});
            }
        }
    };
    matrix("M", ops.M);
    matrix("K", ops.K);

    for (int r = 0; r < kElementDofs; ++r) {
        const Jet<double>& gr = ops.g[static_cast<std::size_t>(r)];
        for (const auto& [idx, value] : gr.terms()) {
            const Exponents& e = gr.basis()->exponents(idx);
            const std::string mono = monomial_name(e, kElementDofs, names);
            std::string status = "unlisted";
            double ref = kNaN;
            double err = kNaN;
            bool node_a = false;
            Monomial6 m{};
            for (std::size_t v = 0; v < 12; ++v) {
                if (v < 6 && e[v] != 0) node_a = true;
                if (v >= 6) m[v - 6] = e[v];
            }
            if (r >= 6 && !node_a) {
                for (const OracleCoefficient& c : oracle.g) {
                    if (c.row != r - 5 || c.monomial != m) continue;
                    const std::string key = "g_{" + std::to_string(c.row) + "," + std::to_string(c.term) + "}";
                    const auto it = std::find_if(cmp.begin(), cmp.end(), [&](const ComparisonRow& x) { return x.name == key; });
                    if (it == cmp.end()) continue;
                    const ComparisonRow& cr = *it;
                    ref = cr.oracle;
                    err = cr.rel_err;
                    status = cr.status;
                    break;
                }
            }
            w.row({"g_" + names[static_cast<std::size_t>(r)] + "[" + mono + "]", str(value), str(ref), str(err), status});
        }
    }
    w.close();
    return kExitOk;
}

int cmd_verify_appendix(RunConfig cfg, const CommandOptions& opts) {
    prepare(cfg, opts);
    const double l = cfg.element_length();
    const ElementOperators ops = build_element(cfg.section(), l);
    const std::vector<ComparisonRow> cmp = compare_with_appendix(ops, appendix_oracle(cfg.section(), l));
    CsvWriter w(opts.out / "verify_appendix.csv", {"name", "computed", "oracle", "rel_err", "status"});
    bool failed = false;
    for (const ComparisonRow& r : cmp) {
        w.row({r.name, str(r.computed), str(r.oracle), str(r.rel_err), r.status});
        failed = failed || r.status == "fail";
    }
    w.close();
    return failed ? kExitOracle : kExitOk;
}

}  // namespace cosserat
