#include "sparsedraw/metrics.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace sparsedraw {

namespace {

std::size_t intersection_size(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = 0, j = 0, count = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

} // namespace

QualityBreakdown jaccard_quality_against_shape(const Graph& original, const Graph& proxy,
                                               const ShapeGraph& shape) {
    if (shape.n != proxy.n)
        throw std::runtime_error("shape graph does not cover the proxy's point set");
    std::unordered_map<std::string, int> by_label;
    by_label.reserve(static_cast<std::size_t>(original.n));
    for (int v = 0; v < original.n; ++v) by_label.emplace(original.label(v), v);

    // original vertex -> its proxy index, or -1 when not drawn
    std::vector<int> proxy_index(static_cast<std::size_t>(original.n), -1);
    for (int i = 0; i < proxy.n; ++i) {
        const auto it = by_label.find(proxy.label(i));
        if (it == by_label.end())
            throw std::runtime_error("proxy label not present in the original graph: " +
                                     proxy.label(i));
        proxy_index[it->second] = i;
    }

    const auto g_adj = original.adjacency();
    const auto s_adj = shape.adjacency();

    QualityBreakdown out;
    out.per_vertex.resize(static_cast<std::size_t>(original.n));
    std::vector<int> shape_neigh;
    for (int u = 0; u < original.n; ++u) {
        shape_neigh.clear();
        if (proxy_index[u] >= 0) {
            for (const int w : s_adj[proxy_index[u]]) {
                const auto it = by_label.find(proxy.label(w));
                // proxy labels were all resolved above
                shape_neigh.push_back(it->second);
            }
            std::sort(shape_neigh.begin(), shape_neigh.end());
        }
        const auto& g_neigh = g_adj[u];
        const std::size_t inter = intersection_size(g_neigh, shape_neigh);
        const std::size_t uni = g_neigh.size() + shape_neigh.size() - inter;
        out.per_vertex[u] = uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
        out.q += out.per_vertex[u];
    }
    out.q /= static_cast<double>(original.n);
    return out;
}

QualityBreakdown jaccard_quality_detail(const Graph& original, const Graph& proxy,
                                        const std::vector<Vec2>& proxy_positions,
                                        ShapeKind kind) {
    if (static_cast<int>(proxy_positions.size()) != proxy.n)
        throw std::runtime_error("position count does not match the proxy");
    return jaccard_quality_against_shape(original, proxy, build_shape(kind, proxy_positions));
}

double jaccard_quality(const Graph& original, const Graph& proxy,
                       const std::vector<Vec2>& proxy_positions, ShapeKind kind) {
    return jaccard_quality_detail(original, proxy, proxy_positions, kind).q;
}

Ratio quality_ratio(double q_method, double q_re) {
    if (q_re < 0.0) throw std::invalid_argument("baseline quality must be non-negative");
    Ratio r;
    if (q_re == 0.0) return r;
    r.value = q_method / q_re;
    r.defined = true;
    return r;
}

} // namespace sparsedraw
