#include "cosserat/jet.hpp"

#include <map>
#include <mutex>

namespace cosserat {

namespace {

std::uint64_t pack(const Exponents& e) {
    std::uint64_t key = 0;
    for (std::size_t v = 0; v < e.size(); ++v) key |= static_cast<std::uint64_t>(e[v]) << (4 * v);
    return key;
}

void enumerate(int nvars, int var, int remaining, Exponents& cur, std::vector<Exponents>& out) {
    if (var == nvars - 1) {
        cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(remaining);
        out.push_back(cur);
        cur[static_cast<std::size_t>(var)] = 0;
        return;
    }
    for (int k = remaining; k >= 0; --k) {
        cur[static_cast<std::size_t>(var)] = static_cast<std::uint8_t>(k);
        enumerate(nvars, var + 1, remaining - k, cur, out);
    }
    cur[static_cast<std::size_t>(var)] = 0;
}

std::mutex g_cache_mutex;
std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>>& cache() {
    static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> c;
    return c;
}

}  // namespace

double constant_value(const Poly& c) {
    if (c.degree() > 0) throw DomainError("jet coefficient depends on sigma where a constant is required");
    return c.coeff(0);
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int nvars, int max_degree) {
    if (nvars < 1 || nvars > kMaxJetVars) throw UsageError("jet nvars must be in [1, 12]");
    if (max_degree < 0 || max_degree > 15) throw UsageError("jet max_degree must be in [0, 15]");
    std::lock_guard lock(g_cache_mutex);
    auto& c = cache();
    auto it = c.find({nvars, max_degree});
    if (it != c.end()) return it->second;
    auto basis = std::make_shared<const MonomialBasis>(nvars, max_degree);
    c.emplace(std::make_pair(nvars, max_degree), basis);
    return basis;
}

MonomialBasis::MonomialBasis(int nvars, int max_degree) : nvars_(nvars), max_degree_(max_degree) {
    Exponents cur{};
    for (int d = 0; d <= max_degree; ++d) {
        deg_begin_.push_back(exps_.size());
        enumerate(nvars, 0, d, cur, exps_);
    }
    deg_begin_.push_back(exps_.size());
    degs_.resize(exps_.size());
    for (int d = 0; d <= max_degree; ++d) {
        for (std::size_t i = deg_begin_[static_cast<std::size_t>(d)]; i < deg_begin_[static_cast<std::size_t>(d) + 1]; ++i) {
            degs_[i] = d;
        }
    }

    auto& index = index_;
    index.reserve(exps_.size() * 2);
    for (std::size_t i = 0; i < exps_.size(); ++i) index.emplace(pack(exps_[i]), i);

    vars_.resize(static_cast<std::size_t>(nvars));
    for (int v = 0; v < nvars; ++v) {
        if (max_degree == 0) break;
        Exponents e{};
        e[static_cast<std::size_t>(v)] = 1;
        vars_[static_cast<std::size_t>(v)] = index.at(pack(e));
    }

    // Product table restricted to pairs whose total degree fits.
    row_offset_.resize(exps_.size());
    std::size_t total = 0;
    for (std::size_t a = 0; a < exps_.size(); ++a) {
        row_offset_[a] = total;
        total += degree_begin(max_degree - degs_[a] + 1);
    }
    mul_.resize(total);
    for (std::size_t a = 0; a < exps_.size(); ++a) {
        const std::size_t limit = degree_begin(max_degree - degs_[a] + 1);
        for (std::size_t b = 0; b < limit; ++b) {
            Exponents e = exps_[a];
            for (std::size_t v = 0; v < e.size(); ++v) e[v] = static_cast<std::uint8_t>(e[v] + exps_[b][v]);
            mul_[row_offset_[a] + b] = static_cast<std::uint32_t>(index.at(pack(e)));
        }
    }

    lower_.assign(exps_.size() * static_cast<std::size_t>(nvars), -1);
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        for (int v = 0; v < nvars; ++v) {
            if (exps_[i][static_cast<std::size_t>(v)] == 0) continue;
            Exponents e = exps_[i];
            e[static_cast<std::size_t>(v)]--;
            lower_[i * static_cast<std::size_t>(nvars) + static_cast<std::size_t>(v)] =
                static_cast<std::int32_t>(index.at(pack(e)));
        }
    }
}

std::size_t MonomialBasis::degree_begin(int d) const {
    if (d <= 0) return 0;
    if (d > max_degree_) return exps_.size();
    return deg_begin_[static_cast<std::size_t>(d)];
}

std::optional<std::size_t> MonomialBasis::find(const Exponents& e) const {
    int d = 0;
    for (int v = nvars_; v < kMaxJetVars; ++v) {
        if (e[static_cast<std::size_t>(v)] != 0) return std::nullopt;
    }
    for (auto x : e) d += x;
    if (d > max_degree_) return std::nullopt;
    auto it = index_.find(pack(e));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::string monomial_name(const Exponents& e, int nvars, std::span<const std::string> var_names) {
    std::string out;
    for (int v = 0; v < nvars; ++v) {
        const int k = e[static_cast<std::size_t>(v)];
        if (k == 0) continue;
        if (!out.empty()) out += '*';
        out += var_names[static_cast<std::size_t>(v)];
        if (k > 1) out += '^' + std::to_string(k);
    }
    return out.empty() ? "1" : out;
}

}  // namespace cosserat
