#include "sparsedraw/sparsify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <random>
#include <stdexcept>

#include "sparsedraw/numio.hpp"
#include "sparsedraw/random.hpp"

#include <json.hpp>

namespace sparsedraw {

Method method_from_string(const std::string& s) {
    if (s == "re") return Method::RE;
    if (s == "sss") return Method::SSS;
    if (s == "dss") return Method::DSS;
    throw std::invalid_argument("unknown method: " + s);
}

std::string to_string(Method m) {
    switch (m) {
        case Method::RE: return "re";
        case Method::SSS: return "sss";
        case Method::DSS: return "dss";
    }
    throw std::logic_error("bad method enum");
}

namespace {

void check_m_prime(const Graph& g, int m_prime) {
    const int m = g.num_edges();
    if (m == 0) throw std::invalid_argument("cannot sparsify a graph with no edges");
    if (m_prime < 1 || m_prime > m)
        throw std::invalid_argument("m_prime " + std::to_string(m_prime) +
                                    " out of range [1, " + std::to_string(m) + "]");
}

void canonicalize(std::vector<Edge>& edges) { std::sort(edges.begin(), edges.end()); }

} // namespace

Sparsification sample_re(const Graph& g, int m_prime, std::uint64_t seed) {
    check_m_prime(g, m_prime);
    const int m = g.num_edges();
    std::vector<int> idx(m);
    for (int i = 0; i < m; ++i) idx[i] = i;
    std::mt19937_64 rng(seed);
    // Partial Fisher-Yates: after i steps the prefix idx[0..i) is a uniform
    // sample without replacement.
    for (int i = 0; i < m_prime; ++i) {
        const int j = i + static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(m - i)));
        std::swap(idx[i], idx[j]);
    }
    Sparsification s;
    s.method = Method::RE;
    s.m_prime = m_prime;
    s.seed = seed;
    s.source_m = m;
    s.selected.reserve(m_prime);
    for (int i = 0; i < m_prime; ++i) s.selected.push_back(g.edges[idx[i]]);
    canonicalize(s.selected);
    return s;
}

Sparsification sample_sss(const Graph& g, const ResistanceTable& r, int m_prime,
                          std::uint64_t seed) {
    check_m_prime(g, m_prime);
    const int m = g.num_edges();
    if (static_cast<int>(r.r.size()) != m)
        throw std::invalid_argument("resistance table size does not match edge count");
    std::mt19937_64 rng(seed);
    // Exponential-race keys: P(edge e wins a slot) is proportional to r_e, and
    // keeping the m' smallest keys draws without replacement.
    std::vector<std::pair<double, int>> keyed(m);
    for (int e = 0; e < m; ++e) {
        const double re = r.r[e];
        if (!(re > 0.0))
            throw std::invalid_argument("non-positive resistance at edge index " +
                                        std::to_string(e));
        keyed[e] = {-std::log(uniform_open01(rng)) / re, e};
    }
    std::nth_element(keyed.begin(), keyed.begin() + (m_prime - 1), keyed.end());
    Sparsification s;
    s.method = Method::SSS;
    s.m_prime = m_prime;
    s.seed = seed;
    s.source_m = m;
    s.selected.reserve(m_prime);
    for (int i = 0; i < m_prime; ++i) s.selected.push_back(g.edges[keyed[i].second]);
    canonicalize(s.selected);
    return s;
}

Sparsification select_dss(const Graph& g, const ResistanceTable& r, int m_prime) {
    check_m_prime(g, m_prime);
    const int m = g.num_edges();
    if (static_cast<int>(r.r.size()) != m)
        throw std::invalid_argument("resistance table size does not match edge count");
    // Quantized keys make mathematically equal resistances compare equal, so
    // the lexicographic tie rule is not defeated by last-bit noise.
    std::vector<std::pair<long long, int>> keyed(m);
    for (int e = 0; e < m; ++e) keyed[e] = {std::llround(r.r[e] * 1e9), e};
    std::sort(keyed.begin(), keyed.end(), [&g](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return g.edges[a.second] < g.edges[b.second];
    });
    Sparsification s;
    s.method = Method::DSS;
    s.m_prime = m_prime;
    s.seed = 0;
    s.source_m = m;
    s.selected.reserve(m_prime);
    for (int i = 0; i < m_prime; ++i) s.selected.push_back(g.edges[keyed[i].second]);
    canonicalize(s.selected);
    return s;
}

SparsifyResult sparsify(const Graph& g, Method method, double density, std::uint64_t seed,
                        const ResistanceTable* precomputed, const std::string& cache_dir) {
    if (!(density > 0.0) || density > 1.0)
        throw std::invalid_argument("density must lie in (0, 1]");
    const int m = g.num_edges();
    if (m == 0) throw std::invalid_argument("cannot sparsify a graph with no edges");
    const int m_prime = std::max(1, static_cast<int>(std::lround(density * m)));

    Sparsification sel;
    if (method == Method::RE) {
        sel = sample_re(g, m_prime, seed);
    } else {
        ResistanceTable local;
        const ResistanceTable* table = precomputed;
        if (table == nullptr) {
            local = cache_dir.empty() ? effective_resistance(g)
                                      : cached_effective_resistance(g, cache_dir);
            table = &local;
        }
        sel = (method == Method::SSS) ? sample_sss(g, *table, m_prime, seed)
                                      : select_dss(g, *table, m_prime);
    }
    SparsifyResult out;
    out.proxy = induced_by_edges(g, sel.selected);
    out.selection = std::move(sel);
    return out;
}

void save_sparsification_sidecar(const Sparsification& s, const std::string& source_hash,
                                 std::ostream& out) {
    nlohmann::ordered_json j;
    j["method"] = to_string(s.method);
    j["m_prime"] = s.m_prime;
    j["seed"] = s.seed;
    j["source_hash"] = source_hash;
    out << j.dump(2) << "\n";
}

} // namespace sparsedraw
