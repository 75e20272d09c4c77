#pragma once

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include "cosserat/section.hpp"

namespace testing {

// Cantilever used throughout: 0.3 m x 10 mm x 5 mm, E = 2.08e8 Pa,
// rho = 3000 kg/m^3, Poisson ratio 0.3.
inline cosserat::SectionProperties ref_section() {
    const double E = 2.08e8;
    return cosserat::rect_section(0.01, 0.005, {E, cosserat::shear_modulus_default(E, 0.3), 3000.0});
}
inline constexpr double kRefLength = 0.3;

inline std::mt19937_64& rng() {
    static std::mt19937_64 g(12345);
    return g;
}

inline double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng()); }

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

/// Least-squares slope of log(err) against log(h).
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double x = std::log(h[i]);
        const double y = std::log(err[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Runs the command line tool; returns its exit status.
inline int run_cli(const std::string& args) {
    const std::string cmd = std::string("\"") + COSSERAT_CLI + "\" " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

inline std::string config(const std::string& name) { return std::string(COSSERAT_CONFIG_DIR) + "/" + name; }

inline std::filesystem::path scratch_dir(const std::string& name) {
    const auto p = std::filesystem::temp_directory_path() / ("cosserat_" + name + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace testing
