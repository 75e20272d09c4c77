#include "cosserat/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cosserat/errors.hpp"

namespace cosserat {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigurationError(path + ": " + msg);
}

void only_keys(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) fail(path, "expected an object");
    for (const auto& [k, v] : j.items()) {
        const bool ok = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return k == a; });
        if (!ok) fail(path.empty() ? k : path + "." + k, "unknown key");
    }
}

const json& required(const json& j, const std::string& path, const char* key) {
    if (!j.contains(key)) fail(path.empty() ? key : path + "." + key, "missing");
    return j.at(key);
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) fail(path, "must be finite");
    return v;
}

double positive(const json& j, const std::string& path) {
    const double v = number(j, path);
    if (!(v > 0.0)) fail(path, "must be positive");
    return v;
}

int integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) fail(path, "expected an integer");
    return j.get<int>();
}

int node_ref(const json& j, const std::string& path) {
    if (j.is_string()) {
        if (j.get<std::string>() == "tip") return -1;
        fail(path, "expected a node index or \"tip\"");
    }
    const int n = integer(j, path);
    if (n < 0) fail(path, "must be non-negative");
    return n;
}

int dof_ref(const json& j, const std::string& path) {
    if (j.is_string()) {
        const auto d = dof_index(j.get<std::string>());
        if (!d) fail(path, "unknown DOF name '" + j.get<std::string>() + "'");
        return *d;
    }
    const int d = integer(j, path);
    if (d < 0 || d >= kNodeDofs) fail(path, "DOF index must be in 0..5");
    return d;
}

std::size_t line_of(const std::string& text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

}  // namespace

std::optional<int> dof_index(const std::string& name) {
    static const std::array<const char*, kNodeDofs> names{"X", "Y", "Z", "Phi_x", "Phi_y", "Phi_z"};
    for (int i = 0; i < kNodeDofs; ++i) {
        if (name == names[static_cast<std::size_t>(i)]) return i;
    }
    return std::nullopt;
}

Material RunConfig::material_law() const {
    return {material.E, shear_modulus_default(material.E, material.nu_poisson), material.rho};
}

SectionProperties RunConfig::section() const {
    return rect_section(geometry.width, geometry.thickness, material_law());
}

Mesh RunConfig::mesh() const {
    Mesh m = Mesh::uniform(geometry.length, elements, section());
    for (const RestraintConfig& r : restraints) {
        const int node = r.node < 0 ? m.node_count() - 1 : r.node;
        for (int d : r.dofs) m.restrain(node, d);
    }
    return m;
}

Loading RunConfig::loading(const Mesh& mesh) const {
    Loading L;
    for (const LoadConfig& lc : loads) {
        const int node = lc.node < 0 ? mesh.node_count() - 1 : lc.node;
        if (node >= mesh.node_count()) {
            throw ConfigurationError("loads: node " + std::to_string(node) + " does not exist");
        }
        L.point.push_back({node, lc.dof, lc.amplitude, lc.frequency, lc.phase, lc.kind});
    }
    if (!distributed.empty()) {
        Vec3 force = Vec3::Zero();
        Vec3 torque = Vec3::Zero();
        for (const DistributedConfig& d : distributed) {
            if (d.component < 3) {
                force(d.component) += d.amplitude;
            } else {
                torque(d.component - 3) += d.amplitude;
            }
        }
        L.constant = uniform_distributed_loads(mesh, force, torque);
    }
    return L;
}

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigurationError("line " + std::to_string(line_of(text, e.byte)) + ": invalid JSON (" + e.what() + ")");
    }
    only_keys(j, "", {"version", "geometry", "material", "mesh", "restraints", "loads", "distributed", "integrator"});
    if (integer(required(j, "", "version"), "version") != 1) fail("version", "only version 1 is supported");

    RunConfig c;
    const json& g = required(j, "", "geometry");
    only_keys(g, "geometry", {"length", "width", "thickness"});
    c.geometry.length = positive(required(g, "geometry", "length"), "geometry.length");
    c.geometry.width = positive(required(g, "geometry", "width"), "geometry.width");
    c.geometry.thickness = positive(required(g, "geometry", "thickness"), "geometry.thickness");

    const json& m = required(j, "", "material");
    only_keys(m, "material", {"E", "rho", "nu_poisson"});
    c.material.E = positive(required(m, "material", "E"), "material.E");
    c.material.rho = positive(required(m, "material", "rho"), "material.rho");
    if (m.contains("nu_poisson")) {
        c.material.nu_poisson = number(m.at("nu_poisson"), "material.nu_poisson");
        if (!(c.material.nu_poisson > -1.0 && c.material.nu_poisson < 0.5)) {
            fail("material.nu_poisson", "must lie in (-1, 0.5)");
        }
    }

    const json& mesh = required(j, "", "mesh");
    only_keys(mesh, "mesh", {"elements"});
    c.elements = integer(required(mesh, "mesh", "elements"), "mesh.elements");
    if (c.elements < 1 || c.elements > 100) fail("mesh.elements", "must be in 1..100");

    const json& rs = required(j, "", "restraints");
    if (!rs.is_array()) fail("restraints", "expected an array");
    for (std::size_t i = 0; i < rs.size(); ++i) {
        const std::string p = "restraints[" + std::to_string(i) + "]";
        only_keys(rs[i], p, {"node", "dofs"});
        RestraintConfig r;
        r.node = node_ref(required(rs[i], p, "node"), join(p, "node"));
        const json& dofs = required(rs[i], p, "dofs");
        if (dofs.is_string() && dofs.get<std::string>() == "all") {
            for (int d = 0; d < kNodeDofs; ++d) r.dofs.push_back(d);
        } else {
            if (!dofs.is_array()) fail(join(p, "dofs"), "expected an array or \"all\"");
            for (std::size_t k = 0; k < dofs.size(); ++k) {
                r.dofs.push_back(dof_ref(dofs[k], join(p, "dofs[" + std::to_string(k) + "]")));
            }
        }
        c.restraints.push_back(r);
    }

    if (j.contains("loads")) {
        const json& ls = j.at("loads");
        if (!ls.is_array()) fail("loads", "expected an array");
        for (std::size_t i = 0; i < ls.size(); ++i) {
            const std::string p = "loads[" + std::to_string(i) + "]";
            only_keys(ls[i], p, {"node", "dof", "amplitude", "frequency", "phase", "kind"});
            LoadConfig l;
            l.node = node_ref(required(ls[i], p, "node"), join(p, "node"));
            l.dof = dof_ref(required(ls[i], p, "dof"), join(p, "dof"));
            l.amplitude = number(required(ls[i], p, "amplitude"), join(p, "amplitude"));
            l.frequency = number(required(ls[i], p, "frequency"), join(p, "frequency"));
            if (l.frequency < 0.0) fail(join(p, "frequency"), "must be non-negative");
            l.phase = number(required(ls[i], p, "phase"), join(p, "phase"));
            const json& kind = required(ls[i], p, "kind");
            if (kind == "cos") {
                l.kind = Waveform::kCos;
            } else if (kind == "sin") {
                l.kind = Waveform::kSin;
            } else {
                fail(join(p, "kind"), "expected \"cos\" or \"sin\"");
            }
            c.loads.push_back(l);
        }
    }

    if (j.contains("distributed")) {
        const json& ds = j.at("distributed");
        if (!ds.is_array()) fail("distributed", "expected an array");
        static const std::array<const char*, 6> comps{"x", "y", "z", "mx", "my", "mz"};
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const std::string p = "distributed[" + std::to_string(i) + "]";
            only_keys(ds[i], p, {"component", "amplitude"});
            DistributedConfig d;
            const json& comp = required(ds[i], p, "component");
            const auto it = std::find_if(comps.begin(), comps.end(), [&](const char* s) { return comp == s; });
            if (it == comps.end()) fail(join(p, "component"), "expected one of x, y, z, mx, my, mz");
            d.component = static_cast<int>(it - comps.begin());
            d.amplitude = number(required(ds[i], p, "amplitude"), join(p, "amplitude"));
            c.distributed.push_back(d);
        }
    }

    if (j.contains("integrator")) {
        const json& in = j.at("integrator");
        only_keys(in, "integrator", {"t_end", "tol", "output_dt"});
        IntegratorConfig ic;
        ic.t_end = positive(required(in, "integrator", "t_end"), "integrator.t_end");
        if (in.contains("tol")) ic.tol = positive(in.at("tol"), "integrator.tol");
        if (ic.tol > 1e-2) fail("integrator.tol", "must not exceed 1e-2");
        if (in.contains("output_dt")) ic.output_dt = positive(in.at("output_dt"), "integrator.output_dt");
        if (ic.output_dt > ic.t_end) fail("integrator.output_dt", "must not exceed t_end");
        c.integrator = ic;
    }
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigurationError(path.string() + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace cosserat
