#pragma once

// Shared fixtures and independent oracles for the unit suite. Everything here
// is deliberately written from first principles (SVD pseudoinverse, Tarjan
// bridges, series circuits) so library results are checked against a second
// route, not against themselves.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sparsedraw/geometry.hpp"
#include "sparsedraw/graph.hpp"
#include "sparsedraw/random.hpp"

namespace testutil {

using sparsedraw::Edge;
using sparsedraw::Graph;
using sparsedraw::Vec2;
using sparsedraw::make_edge;
using sparsedraw::make_graph;
using sparsedraw::mix_seed;
using sparsedraw::uniform01;
using sparsedraw::uniform_below;

// Scratch directory that cleans up after itself.
struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path = std::filesystem::temp_directory_path() /
               (tag + "_" + std::to_string(rng()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string str() const { return path.string(); }
};

inline Graph path_graph(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
    return make_graph(n, edges);
}

inline Graph cycle_graph(int n) {
    std::vector<Edge> edges;
    for (int v = 0; v < n; ++v) edges.push_back(make_edge(v, (v + 1) % n));
    return make_graph(n, edges);
}

inline Graph complete_graph(int n) {
    std::vector<Edge> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
    return make_graph(n, edges);
}

inline Graph star_graph(int leaves) {
    std::vector<Edge> edges;
    for (int v = 1; v <= leaves; ++v) edges.push_back({0, v});
    return make_graph(leaves + 1, edges);
}

// Two triangles joined by the bridge (2,3).
inline Graph barbell_graph() {
    return make_graph(6, {{0, 1}, {0, 2}, {1, 2}, {2, 3}, {3, 4}, {3, 5}, {4, 5}});
}

// Exactly m edges drawn uniformly from all pairs; may be disconnected.
inline Graph random_gnm(int n, int m, std::uint64_t seed) {
    std::vector<Edge> all;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) all.push_back({u, v});
    std::mt19937_64 rng(seed);
    for (int i = 0; i < m; ++i) {
        const auto j = i + static_cast<int>(uniform_below(rng, all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(m);
    return make_graph(n, all);
}

// Random recursive tree plus `extra` distinct non-tree edges; always connected.
inline Graph random_connected(int n, int extra, std::uint64_t seed) {
    if (extra > n * (n - 1) / 2 - (n - 1))
        throw std::invalid_argument("random_connected: more chords requested than exist");
    std::mt19937_64 rng(seed);
    std::set<Edge> used;
    for (int v = 1; v < n; ++v)
        used.insert(make_edge(static_cast<int>(uniform_below(rng, v)), v));
    int budget = extra;
    while (budget > 0) {
        const int u = static_cast<int>(uniform_below(rng, n));
        const int v = static_cast<int>(uniform_below(rng, n));
        if (u == v) continue;
        if (used.insert(make_edge(u, v)).second) --budget;
    }
    return make_graph(n, std::vector<Edge>(used.begin(), used.end()));
}

inline std::vector<Vec2> random_points(int n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Vec2> pts(n);
    for (auto& p : pts) p = {uniform01(rng) * 10.0 - 5.0, uniform01(rng) * 10.0 - 5.0};
    return pts;
}

// Moore-Penrose inverse through SVD: an independent route from the spectral
// formula under test.
inline Eigen::MatrixXd svd_pinv(const Eigen::MatrixXd& a) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    const double tol = 1e-10 * std::max(1.0, sv.size() > 0 ? sv(0) : 0.0);
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) > tol) inv(i) = 1.0 / sv(i);
    return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

// Tarjan lowlink bridge finder (graphs are simple, so the single edge back to
// the DFS parent is always a tree edge and safe to skip).
inline std::vector<Edge> bridges(const Graph& g) {
    const auto adj = g.adjacency();
    std::vector<int> disc(g.n, -1), low(g.n, 0);
    std::vector<Edge> found;
    int timer = 0;
    const std::function<void(int, int)> dfs = [&](int v, int parent) {
        disc[v] = low[v] = timer++;
        for (const int w : adj[v]) {
            if (w == parent) continue;
            if (disc[w] >= 0) {
                low[v] = std::min(low[v], disc[w]);
            } else {
                dfs(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] > disc[v]) found.push_back(make_edge(v, w));
            }
        }
    };
    for (int v = 0; v < g.n; ++v)
        if (disc[v] < 0) dfs(v, -1);
    std::sort(found.begin(), found.end());
    return found;
}

inline std::vector<std::pair<std::string, std::string>> label_edges(const Graph& g) {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(g.edges.size());
    for (const auto& [u, v] : g.edges) {
        auto a = g.label(u);
        auto b = g.label(v);
        if (b < a) std::swap(a, b);
        out.push_back({std::move(a), std::move(b)});
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace testutil
