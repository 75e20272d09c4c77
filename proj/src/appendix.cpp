#include "cosserat/appendix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cosserat {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Params {
    double K;
    double J1;
    double J2;
    double J3;
    double l;
};

using Symbols = std::map<std::string, std::vector<double>>;

double first(const Symbols& s, const std::string& name) {
    const auto it = s.find(name);
    return it == s.end() ? kNaN : it->second.front();
}

Symbols symbol_table(const Params& p) {
    const double K = p.K, J1 = p.J1, J2 = p.J2, J3 = p.J3, l = p.l;
    const double l2 = l * l, l3 = l2 * l, l4 = l3 * l, l5 = l4 * l, l6 = l5 * l, l7 = l6 * l;
    const double d2 = (J1 - J2) * (J1 - J2);
    const double KJ3 = J3 * K;
    Symbols s;
    auto def = [&s](const std::string& n, double v) { s[n].push_back(v); };
    auto ref = [&s](const std::string& n) { return first(s, n); };

    // second order
    def("1,1", 6 * (K * l2 - 20 * J2) / (5 * l4));
    def("3,1", ref("1,1") / 2);
    def("1,2", 6 * (J2 - J1) / l3);
    def("2,1", ref("1,2"));
    def("6,1", ref("1,2"));
    def("1,3", (K * l2 - 60 * J2) / (10 * l3));
    def("3,2", ref("1,3"));
    def("5,1", -ref("1,3"));
    def("1,4", (4 * J1 - J2 - J3) / l2);
    def("4,1", ref("1,4"));
    def("6,2", -ref("1,4"));
    def("2,2", 6 * (K * l2 - 20 * J1) / (5 * l4));
    def("3,3", ref("2,2") / 2);
    def("2,3", (K * l2 - 60 * J1) / (10 * l3));
    def("3,4", ref("2,3"));
    def("4,2", ref("2,3"));
    def("2,4", (J1 - 4 * J2 + J3) / l2);
    def("5,2", -ref("2,4"));
    def("6,3", ref("2,4"));
    def("3,5", K / 15);
    def("3,6", K / 15);
    def("4,3", 2 * K / 15);
    def("5,3", -2 * K / 15);
    def("4,4", (J1 - J2) / l);
    def("5,4", -ref("4,4"));
    def("6,4", ref("4,4"));

    // third order
    def("1,5", 18 * (7 * K * K * l4 - 160 * J2 * K * l2 - 560 * J2 * J2) / (175 * K * l7));
    def("1,6", 9 * (7 * K * K * l4 - 260 * J2 * K * l2 - 3360 * J2 * J2) / (350 * K * l6));
    def("1,7", 18 * (7 * K * l2 - 80 * (J1 + J2)) / (175 * l5) -
                   18 * (10 * K * l2 * d2 + 112 * J1 * J2 * J3) / (35 * KJ3 * l7));
    def("1,8", 3 * (7 * K * l2 - 480 * J1 + 220 * J2) / (175 * l4) -
                   18 * (10 * K * l2 * d2 + 112 * J1 * J2 * J3) / (35 * KJ3 * l6));
    def("1,9", -(K * K * l4 + 840 * J2 * K - 25200 * J2 * J2) / (700 * J2 * l5));
    def("1,10", (14 * K * l2 - 500 * J1 - 80 * J2 + 175 * J3) / (175 * l3) -
                    (52 * K * l2 * d2 + 504 * J1 * J2 * J3) / (35 * KJ3 * l5));
    def("1,11", (63 * K * K * l4 - 520 * J2 * K * l2 - 38640 * J2 * J2) / (700 * K * l5));
    def("1,12", (20 * J1 * J1 - 16 * J1 * J2 - 4 * J1 * J3 - 4 * J2 * J2 + 4 * J2 * J3 - J3 * J3) / (5 * J1 * l3));
    def("1,13", -3 * (7 * K * l2 - 480 * J2 + 220 * J1) / (350 * l4) +
                    9 * (10 * K * l2 * d2 + 112 * J1 * J2 * J3) / (35 * KJ3 * l6));
    def("1,14", 12 * (J1 - J2) / l4);
    def("1,15", -(7 * K * l2 + 900 * (J1 + J2) - 700 * J3) / (700 * l3) +
                    (118 * K * l2 * d2 + 1428 * J1 * J2 * J3) / (35 * KJ3 * l5));
    def("1,16", (K * K * l4 - 8400 * J2 * J2) / (1400 * J2 * l4));
    def("1,17", -(5 * J1 * K * l2 - 2 * J2 * K * l2 + J3 * K * l2 - 240 * J1 * J1 + 60 * J1 * J2 + 60 * J1 * J3) /
                    (60 * J1 * l3));
    def("1,18", -(7 * K * l2 - 240 * J1 - 30 * J2) / (1050 * l2) +
                    (40 * K * l2 * d2 + 462 * J1 * J2 * J3) / (35 * KJ3 * l4));
    def("1,19", -(7 * K * l4 - 270 * J2 * K * l2 - 13860 * J2 * J2) / (1050 * K * l4));
    def("1,20", -(10 * J1 * J1 - 16 * J1 * J2 + J1 * J3 - 4 * J2 * J2 + 4 * J2 * J3 - J3 * J3) / (10 * J1 * l2));
    def("2,7", -6 * (7 * K * l2 - 480 * J2 + 220 * J1) / (350 * l4) +
                   18 * (10 * K * l2 * d2 + 112 * J1 * J2 * J3) / (35 * KJ3 * l6));
    def("2,10", 18 * (7 * K * K * l4 - 160 * J1 * K * l2 - 560 * J1 * J1) / (175 * K * l7));
    def("2,11", 9 * (7 * K * K * l4 - 260 * J1 * K * l2 - 3360 * J1 * J1) / (350 * K * l6));
    def("2,12", -(K * K * l4 + 840 * J1 * K - 25200 * J1 * J1) / (700 * J1 * l5));
    def("2,13", (63 * K * K * l4 - 520 * J1 * K * l2 - 38640 * J1 * J1) / (700 * K * l5));
    def("2,14", (14 * K * l2 - 500 * J2 - 80 * J1 + 175 * J3) / (175 * KJ3 * l5) -
                    (52 * K * l2 * d2 + 504 * J1 * J2 * J3) / (35 * KJ3 * l5));
    def("2,15", (20 * J2 * J2 - 16 * J1 * J2 - 4 * J2 * J3 - 4 * J1 * J1 + 4 * J1 * J3 - J3 * J3) / (5 * J2 * l3));
    def("2,16", -(K * K * l4 - 8400 * J1 * J1) / (1400 * J1 * l4));
    def("2,17", -(5 * J2 * K * l2 - 2 * J1 * K * l2 + J3 * K * l2 - 240 * J2 * J2 + 60 * J1 * J2 + 60 * J2 * J3) /
                    (60 * J2 * l3));
    def("2,18", (7 * K * l4 - 270 * J1 * K * l2 - 13860 * J1 * J1) / (1050 * K * l4));
    def("2,19", (7 * K * l2 - 240 * J2 - 30 * J1) / (1050 * l2) - (40 * K * l2 * d2 + 462 * J1 * J2 * J3) / (35 * l2));
    def("2,20", (10 * J2 * J2 - 16 * J1 * J2 + J2 * J3 - 4 * J1 * J1 + 4 * J1 * J3 - J3 * J3) / (10 * J2 * l2));
    def("3,14", -K * (11 * K * l2 - 840 * J1) / (6300 * J1 * l));
    def("3,15", -K * (11 * K * l2 - 840 * J2) / (6300 * J2 * l));
    def("3,16", K * (2 * J1 * J1 - J1 * J3 - 2 * J2 * J2 + J2 * J3) / (120 * J1 * J2));
    def("4,18", (7 * K * l4 - 180 * J1 * K * l2 - 7560 * J1 * J1) / (1575 * K * l3));
    def("4,19", (14 * K * l2 - 180 * (J1 + J2) + 175 * J3) / (1575 * l) -
                    (285 * K * l2 * d2 + 3024 * J1 * J2 * J3) / (315 * KJ3 * l3));
    def("4,18", (12 * J1 * J1 + 28 * J1 * J2 - 12 * J1 * J3 - 20 * J2 * J2 + 2 * J2 * J3 + 3 * J3 * J3) / (60 * J2 * l));
    def("5,19", -(7 * K * l4 - 180 * J2 * K * l2 - 7560 * J2 * J2) / (1575 * K * l3));
    def("5,20", -(12 * J2 * J2 + 28 * J1 * J2 - 12 * J2 * J3 - 20 * J1 * J1 + 2 * J1 * J3 + 3 * J3 * J3) / (60 * J1 * l));

    // cross references
    const std::vector<std::tuple<const char*, double, const char*>> refs = {
        {"2,5", 1.0, "1,7"},    {"2,6", 0.5, "1,8"},    {"2,8", 1.0, "1,14"},  {"2,9", 1.0, "1,15"},
        {"3,7", 1.0, "1,9"},    {"3,8", 1.0, "1,14"},   {"3,9", 0.5, "1,16"},  {"3,10", 1.0, "1,17"},
        {"3,11", 1.0, "2,12"},  {"3,12", 2.0, "1,16"},  {"3,13", -1.0, "2,17"}, {"4,5", 0.5, "1,8"},
        {"4,6", 1.0, "1,10"},   {"4,7", 1.0, "1,15"},   {"4,8", 1.0, "1,17"},  {"4,9", 3.0, "1,18"},
        {"4,10", -1.0 / 3.0, "2,11"}, {"4,11", 1.0, "2,13"}, {"4,12", 1.0, "2,16"}, {"4,13", 3.0, "2,18"},
        {"4,14", 1.0, "2,19"},  {"4,15", 1.0, "2,20"},  {"4,16", 1.0, "3,14"}, {"4,17", 1.0, "3,16"},
        {"5,5", 1.0 / 3.0, "1,6"}, {"5,6", -1.0, "1,11"}, {"5,7", -0.5, "2,7"}, {"5,8", -1.0, "1,15"},
        {"5,9", -1.0, "1,16"},  {"5,10", -1.0, "1,18"}, {"5,11", -3.0, "1,19"}, {"5,12", -1.0, "1,20"},
        {"5,13", -1.0, "2,14"}, {"5,14", -1.0, "2,17"}, {"5,15", -1.0, "2,19"}, {"5,16", 1.0, "3,15"},
        {"5,17", -1.0, "3,16"}, {"5,18", -1.0, "4,19"}, {"6,5", 1.0, "1,12"},  {"6,6", 1.0, "1,14"},
        {"6,7", 1.0, "1,17"},   {"6,8", 2.0, "1,20"},   {"6,9", 1.0, "2,15"},  {"6,10", -1.0, "3,13"},
        {"6,11", 2.0, "2,20"},  {"6,12", 1.0, "3,16"},  {"6,13", -1.0, "4,20"}, {"6,14", 1.0, "5,20"},
    };
    for (const auto& [name, factor, target] : refs) {
        const double v = ref(target);
        if (!std::isnan(v)) def(name, factor * v);
    }
    return s;
}

Monomial6 parse_monomial(const std::string& text) {
    Monomial6 m{};
    std::istringstream in(text);
    std::string tok;
    static const std::array<const char*, 6> names{"X", "Y", "Z", "Px", "Py", "Pz"};
    while (in >> tok) {
        const auto caret = tok.find('^');
        const std::string var = tok.substr(0, caret);
        const int power = caret == std::string::npos ? 1 : std::stoi(tok.substr(caret + 1));
        for (std::size_t v = 0; v < names.size(); ++v) {
            if (var == names[v]) m[v] = static_cast<std::uint8_t>(m[v] + power);
        }
    }
    return m;
}

const std::array<std::vector<std::string>, 6>& printed_rows() {
    static const std::vector<std::string> fx = {
        "X Z", "Y Pz", "Z Py", "Px Pz", "X^3", "X^2 Py", "X Y^2", "X Y Px", "X Z^2", "X Px^2",
        "X Py^2", "X Pz^2", "Y^2 Py", "Y Z Pz", "Y Px Py", "Z^2 Py", "Z Px Pz", "Px^2 Pz", "Py^3", "Py Pz^2"};
    static const std::vector<std::string> fy = {
        "X Pz", "Y Z", "Z Px", "Py Pz", "X^2 Y", "X^2 Px", "X Y Py", "X Z Pz", "X Px Py", "Y^3",
        "Y^2 Px", "Y Z^2", "Y Px^2", "Y Py^2", "Y Pz^2", "Z^2 Px", "Z Py Pz", "Px^3", "Px Py^2", "Px Pz^2"};
    static const std::array<std::vector<std::string>, 6> rows = {
        fx,
        fy,
        std::vector<std::string>{"X^2", "X Py", "Y^2", "Y Px", "Px^2", "Py^2", "X^2 Z", "X Y Pz", "X Z Py",
                                 "X Px Pz", "Y^2 Z", "Y Z Px", "Y Py Pz", "Z Px^2", "Z Py^2", "Px Py Pz"},
        fy,
        fx,
        std::vector<std::string>{"X Y", "X Px", "Y Py", "Px Py", "X^2 Pz", "X Y Z", "X Z Px", "X Py Pz",
                                 "Y^2 Pz", "Y Z Py", "Y Px Pz", "Z Px Py", "Px^2 Pz", "Py^2 Pz"},
    };
    return rows;
}

std::string key(int row, int term) { return std::to_string(row) + "," + std::to_string(term); }

int translations(const Monomial6& m) { return m[0] + m[1] + m[2]; }

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

}  // namespace

std::string monomial6_name(const Monomial6& m) {
    static const std::array<const char*, 6> names{"X_b", "Y_b", "Z_b", "Phi_xb", "Phi_yb", "Phi_zb"};
    std::string out;
    for (std::size_t v = 0; v < 6; ++v) {
        if (m[v] == 0) continue;
        if (!out.empty()) out += '*';
        out += names[v];
        if (m[v] > 1) out += "^" + std::to_string(m[v]);
    }
    return out.empty() ? "1" : out;
}

CantileverOracle appendix_oracle(const SectionProperties& sec, double l) {
    CantileverOracle o;
    const double mu = sec.mu;
    const double l2 = l * l;
    Mat6& M = o.M6;
    M(0, 0) = (13 * mu * l2 + 42 * sec.I22) / (35 * l);
    M(0, 4) = M(4, 0) = -sec.I22 / 10 - 11 * mu * l2 / 210;
    M(1, 1) = (13 * mu * l2 + 42 * sec.I11) / (35 * l);
    M(1, 3) = M(3, 1) = sec.I11 / 10 + 11 * mu * l2 / 210;
    M(2, 2) = mu * l / 3;
    M(3, 3) = 2 * sec.I11 * l / 15 + mu * l2 * l / 105;
    M(4, 4) = 2 * sec.I22 * l / 15 + mu * l2 * l / 105;
    M(5, 5) = sec.I33 * l / 3;
    Mat6& K = o.K6;
    K(0, 0) = 12 * sec.J22 / (l2 * l);
    K(0, 4) = K(4, 0) = -6 * sec.J22 / l2;
    K(1, 1) = 12 * sec.J11 / (l2 * l);
    K(1, 3) = K(3, 1) = 6 * sec.J11 / l2;
    K(2, 2) = sec.K33 / l;
    K(3, 3) = 4 * sec.J11 / l;
    K(4, 4) = 4 * sec.J22 / l;
    K(5, 5) = sec.J33 / l;

    const Params base{sec.K33, sec.J11, sec.J22, sec.J33, l};
    constexpr double kappa = 1.7;
    constexpr double lambda = 2.3;
    const Params scaled{kappa * base.K, kappa * lambda * lambda * base.J1, kappa * lambda * lambda * base.J2,
                        kappa * lambda * lambda * base.J3, lambda * base.l};
    o.symbols = symbol_table(base);
    const Symbols sym_scaled = symbol_table(scaled);

    const auto& rows = printed_rows();
    for (int r = 1; r <= 6; ++r) {
        const auto& terms = rows[static_cast<std::size_t>(r - 1)];
        for (int j = 1; j <= static_cast<int>(terms.size()); ++j) {
            OracleCoefficient c;
            c.row = r;
            c.term = j;
            c.label = key(r, j);
            c.monomial = parse_monomial(terms[static_cast<std::size_t>(j - 1)]);
            if (r == 5 && (j == 1 || j == 10 || j == 11)) {
                c.label = key(1, j);
                c.flag = "printed with symbol g_{" + c.label + "} in row 5";
            }
            if (r == 5 && j == 13) c.flag = "malformed symbol g{5,13}";
            if (r == 6 && j == 5) c.flag = "undefined variable x_2 in monomial";
            const auto it = o.symbols.find(c.label);
            if (it == o.symbols.end()) {
                c.value = kNaN;
                c.flag = "symbol g_{" + c.label + "} is never defined";
            } else {
                c.value = it->second.front();
                if (it->second.size() > 1) c.flag = "symbol g_{" + c.label + "} is defined twice";
                const double expected =
                    kappa * std::pow(lambda, (r >= 4 ? 1 : 0) - translations(c.monomial));
                const double ratio = first(sym_scaled, c.label) / c.value;
                if (c.flag.empty() && !close(ratio, expected, 1e-9)) c.flag = "dimensionally inconsistent";
            }
            o.g.push_back(c);
        }
    }

    // Printed entries that stem from the same potential term must agree.
    // A term c*m of the potential contributes e_i*c*m/q_i to row i.
    auto listed = [&o](int row, const Monomial6& m) {
        return std::any_of(o.g.begin(), o.g.end(),
                           [&](const OracleCoefficient& c) { return c.row == row && c.monomial == m; });
    };
    std::map<Monomial6, std::vector<std::pair<std::size_t, double>>> groups;
    for (std::size_t k = 0; k < o.g.size(); ++k) {
        OracleCoefficient& c = o.g[k];
        Monomial6 m = c.monomial;
        const std::size_t var = static_cast<std::size_t>(c.row - 1);
        m[var] = static_cast<std::uint8_t>(m[var] + 1);
        if (c.flag.empty()) {
            for (std::size_t v = 0; v < 6; ++v) {
                if (m[v] == 0 || v == var) continue;
                Monomial6 partner = m;
                partner[v] = static_cast<std::uint8_t>(partner[v] - 1);
                if (!listed(static_cast<int>(v) + 1, partner)) {
                    c.flag = "partner term " + monomial6_name(partner) + " missing from row " + std::to_string(v + 1);
                    break;
                }
            }
        }
        if (c.flag.empty()) groups[m].emplace_back(k, c.value / m[var]);
    }
    for (const auto& [m, members] : groups) {
        const bool consistent = std::all_of(members.begin(), members.end(), [&](const auto& a) {
            return close(a.second, members.front().second, 1e-9);
        });
        if (consistent) continue;
        for (const auto& member : members) o.g[member.first].flag = "contradicts printed partner terms";
    }
    return o;
}

double cantilever_coefficient(const ElementOperators& ops, int row, const Monomial6& m) {
    Exponents e{};
    for (std::size_t v = 0; v < 6; ++v) e[6 + v] = m[v];
    return ops.g[static_cast<std::size_t>(5 + row)].coeff(e);
}

std::vector<ComparisonRow> compare_with_appendix(const ElementOperators& ops, const CantileverOracle& oracle,
                                                 double tol_matrix, double tol_g) {
    std::vector<ComparisonRow> out;
    auto matrix_rows = [&](const char* name, const Mat12& full, const Mat6& ref) {
        const Mat6 comp = full.block<6, 6>(6, 6);
        const double scale = ref.cwiseAbs().maxCoeff();
        for (int i = 0; i < 6; ++i) {
            for (int j = i; j < 6; ++j) {
                ComparisonRow row;
                row.name = std::string(name) + "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
                row.computed = comp(i, j);
                row.oracle = ref(i, j);
                const double denom = ref(i, j) != 0.0 ? std::abs(ref(i, j)) : scale;
                row.rel_err = std::abs(row.computed - row.oracle) / denom;
                row.status = row.rel_err <= tol_matrix ? "ok" : "fail";
                out.push_back(row);
            }
        }
    };
    matrix_rows("M", ops.M, oracle.M6);
    matrix_rows("K", ops.K, oracle.K6);

    const double K33 = ops.section.K33;
    const double l = ops.l;
    for (const OracleCoefficient& c : oracle.g) {
        ComparisonRow row;
        row.name = "g_{" + key(c.row, c.term) + "}";
        row.computed = cantilever_coefficient(ops, c.row, c.monomial);
        row.oracle = c.value;
        row.note = monomial6_name(c.monomial);
        if (std::isnan(c.value)) {
            row.rel_err = kNaN;
        } else if (c.value != 0.0) {
            row.rel_err = std::abs(row.computed - c.value) / std::abs(c.value);
        } else {
            const double unit = K33 * std::pow(l, (c.row >= 4 ? 1 : 0) - translations(c.monomial));
            row.rel_err = std::abs(row.computed) / unit;
        }
        if (!c.flag.empty()) {
            row.status = "flagged";
            row.note += "; " + c.flag;
        } else {
            row.status = row.rel_err <= tol_g ? "ok" : "fail";
        }
        out.push_back(row);
    }

    // Computed terms that the printed rows do not list.
    for (int r = 1; r <= 6; ++r) {
        const Jet<double>& gi = ops.g[static_cast<std::size_t>(5 + r)];
        for (const auto& [idx, value] : gi.terms()) {
            const Exponents& e = gi.basis()->exponents(idx);
            bool node_a = false;
            Monomial6 m{};
            for (std::size_t v = 0; v < 12; ++v) {
                if (v < 6 && e[v] != 0) node_a = true;
                if (v >= 6) m[v - 6] = e[v];
            }
            if (node_a) continue;
            const bool listed = std::any_of(oracle.g.begin(), oracle.g.end(), [&](const OracleCoefficient& c) {
                return c.row == r && c.monomial == m;
            });
            if (listed) continue;
            const double unit = K33 * std::pow(l, (r >= 4 ? 1 : 0) - translations(m));
            if (std::abs(value) <= 1e-10 * unit) continue;
            ComparisonRow row;
            row.name = "g_" + std::to_string(r) + "[" + monomial6_name(m) + "]";
            row.computed = value;
            row.oracle = kNaN;
            row.rel_err = kNaN;
            row.status = "unlisted";
            row.note = monomial6_name(m);
            out.push_back(row);
        }
    }
    return out;
}

}  // namespace cosserat
