#include "sparsedraw/genlab.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "sparsedraw/random.hpp"

namespace sparsedraw {

namespace {

long long pair_count(int n) { return static_cast<long long>(n) * (n - 1) / 2; }

/// Connected block on vertices [base, base + size) with exactly m_target
/// edges: a random recursive tree plus a uniform draw of extra pairs.
void build_connected_block(std::vector<Edge>& out, int base, int size, long long m_target,
                           std::mt19937_64& rng) {
    std::vector<Edge> tree;
    tree.reserve(static_cast<std::size_t>(size > 0 ? size - 1 : 0));
    for (int v = 1; v < size; ++v) {
        const int u = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(v)));
        tree.push_back(make_edge(base + u, base + v));
    }
    const long long extra = m_target - (size - 1);
    if (extra > 0) {
        std::sort(tree.begin(), tree.end());
        std::vector<Edge> pool;
        pool.reserve(static_cast<std::size_t>(pair_count(size) - (size - 1)));
        for (int u = 0; u < size; ++u)
            for (int v = u + 1; v < size; ++v) {
                const Edge e = make_edge(base + u, base + v);
                if (!std::binary_search(tree.begin(), tree.end(), e)) pool.push_back(e);
            }
        for (long long i = 0; i < extra; ++i) {
            const auto j = i + static_cast<long long>(
                                   uniform_below(rng, static_cast<std::uint64_t>(
                                                          pool.size() - static_cast<std::size_t>(i))));
            std::swap(pool[static_cast<std::size_t>(i)], pool[static_cast<std::size_t>(j)]);
            out.push_back(pool[static_cast<std::size_t>(i)]);
        }
    }
    out.insert(out.end(), tree.begin(), tree.end());
}

} // namespace

Graph generate_blackhole(const BlackHoleSpec& spec) {
    if (spec.holes.empty()) throw std::invalid_argument("violated: at least one hole required");
    if (spec.periphery_size < 1)
        throw std::invalid_argument("violated: periphery_size >= 1");
    if (spec.periphery_edges < spec.periphery_size - 1)
        throw std::invalid_argument("violated: periphery_edges >= periphery_size - 1 "
                                    "(periphery must be connectable)");
    if (spec.periphery_edges > pair_count(spec.periphery_size))
        throw std::invalid_argument("violated: periphery_edges <= periphery_size choose 2");
    if (spec.attachment_edges < 1)
        throw std::invalid_argument("violated: attachment_edges >= 1 per hole");

    std::vector<long long> core_edges;
    int core_total = 0;
    for (std::size_t i = 0; i < spec.holes.size(); ++i) {
        const auto& h = spec.holes[i];
        const std::string where = " for hole " + std::to_string(i);
        if (h.core_size < 1) throw std::invalid_argument("violated: core_size >= 1" + where);
        if (!(h.core_density > 0.0) || h.core_density > 1.0)
            throw std::invalid_argument("violated: core_density in (0, 1]" + where);
        if (h.core_density * static_cast<double>(pair_count(h.core_size)) <
            static_cast<double>(h.core_size - 1))
            throw std::invalid_argument(
                "violated: core_density * core_size * (core_size - 1) / 2 >= core_size - 1" +
                where);
        if (spec.attachment_edges > static_cast<long long>(h.core_size) * spec.periphery_size)
            throw std::invalid_argument(
                "violated: attachment_edges <= core_size * periphery_size" + where);
        core_edges.push_back(
            std::llround(h.core_density * static_cast<double>(pair_count(h.core_size))));
        core_total += h.core_size;
    }

    std::mt19937_64 rng(spec.seed);
    std::vector<Edge> edges;
    const int periphery_base = core_total;
    build_connected_block(edges, periphery_base, spec.periphery_size, spec.periphery_edges, rng);

    int base = 0;
    for (std::size_t i = 0; i < spec.holes.size(); ++i) {
        const int cs = spec.holes[i].core_size;
        build_connected_block(edges, base, cs, core_edges[i], rng);
        // attachment pairs drawn without replacement from core x periphery
        const long long pairs = static_cast<long long>(cs) * spec.periphery_size;
        std::vector<long long> idx(static_cast<std::size_t>(pairs));
        for (long long j = 0; j < pairs; ++j) idx[static_cast<std::size_t>(j)] = j;
        for (int j = 0; j < spec.attachment_edges; ++j) {
            const auto pick =
                j + static_cast<long long>(uniform_below(
                        rng, static_cast<std::uint64_t>(pairs - j)));
            std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(pick)]);
            const long long p = idx[static_cast<std::size_t>(j)];
            edges.push_back(make_edge(base + static_cast<int>(p / spec.periphery_size),
                                      periphery_base + static_cast<int>(p % spec.periphery_size)));
        }
        base += cs;
    }
    return make_graph(core_total + spec.periphery_size, edges);
}

Graph generate_grid(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid dimensions must be >= 1");
    std::vector<Edge> edges;
    const auto at = [w](int x, int y) { return y * w + x; };
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (x + 1 < w) edges.push_back({at(x, y), at(x + 1, y)});
            if (y + 1 < h) edges.push_back({at(x, y), at(x, y + 1)});
        }
    return make_graph(w * h, edges);
}

Graph generate_scale_free(int n, int edges_per_step, std::uint64_t seed) {
    if (edges_per_step < 1) throw std::invalid_argument("edges_per_step must be >= 1");
    if (n <= edges_per_step)
        throw std::invalid_argument("n must exceed edges_per_step");
    const int k = edges_per_step;
    std::vector<Edge> edges;
    std::vector<int> endpoints; // vertex repeated once per incident edge
    for (int u = 0; u <= k && u < n; ++u)
        for (int v = u + 1; v <= k; ++v) {
            edges.push_back({u, v});
            endpoints.push_back(u);
            endpoints.push_back(v);
        }
    std::mt19937_64 rng(seed);
    std::vector<int> targets;
    for (int v = k + 1; v < n; ++v) {
        targets.clear();
        while (static_cast<int>(targets.size()) < k) {
            const int t = endpoints[static_cast<std::size_t>(
                uniform_below(rng, static_cast<std::uint64_t>(endpoints.size())))];
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        for (const int t : targets) {
            edges.push_back(make_edge(t, v));
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return make_graph(n, edges);
}

Graph generate_from_json(const nlohmann::json& spec) {
    const std::string type = spec.at("type").get<std::string>();
    if (type == "grid") return generate_grid(spec.at("w").get<int>(), spec.at("h").get<int>());
    if (type == "scale_free")
        return generate_scale_free(spec.at("n").get<int>(), spec.at("edges_per_step").get<int>(),
                                   spec.value("seed", std::uint64_t{0}));
    if (type == "blackhole") {
        BlackHoleSpec b;
        for (const auto& h : spec.at("holes"))
            b.holes.push_back({h.at(0).get<int>(), h.at(1).get<double>()});
        b.periphery_size = spec.at("periphery_size").get<int>();
        b.periphery_edges = spec.at("periphery_edges").get<int>();
        b.attachment_edges = spec.at("attachment_edges").get<int>();
        b.seed = spec.value("seed", std::uint64_t{0});
        return generate_blackhole(b);
    }
    throw std::invalid_argument("unknown generator type: " + type);
}

nlohmann::json blackhole_to_json(const BlackHoleSpec& spec) {
    nlohmann::ordered_json j;
    j["type"] = "blackhole";
    auto holes = nlohmann::ordered_json::array();
    for (const auto& h : spec.holes) holes.push_back({h.core_size, h.core_density});
    j["holes"] = holes;
    j["periphery_size"] = spec.periphery_size;
    j["periphery_edges"] = spec.periphery_edges;
    j["attachment_edges"] = spec.attachment_edges;
    j["seed"] = spec.seed;
    return j;
}

} // namespace sparsedraw
