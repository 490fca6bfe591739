#include "sparsedraw/shape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace sparsedraw {

ShapeKind shape_from_string(const std::string& s) {
    if (s == "emst") return ShapeKind::EMST;
    if (s == "rng") return ShapeKind::RNG;
    if (s == "gg") return ShapeKind::GG;
    throw std::invalid_argument("unknown shape kind: " + s);
}

std::string to_string(ShapeKind k) {
    switch (k) {
        case ShapeKind::EMST: return "emst";
        case ShapeKind::RNG: return "rng";
        case ShapeKind::GG: return "gg";
    }
    throw std::logic_error("bad shape enum");
}

std::vector<std::vector<int>> ShapeGraph::adjacency() const {
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (const auto& [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

namespace {

void check_finite(const std::vector<Vec2>& points) {
    for (const Vec2 p : points)
        if (!std::isfinite(p.x) || !std::isfinite(p.y))
            throw std::invalid_argument("point set contains a non-finite coordinate");
}

/// Exactly coincident points collapse to one representative for construction;
/// representative adjacency is mirrored back to every duplicate afterwards.
struct Dedup {
    std::vector<Vec2> reps;
    std::vector<std::vector<int>> members; // rep index -> original indices
};

Dedup dedup_points(const std::vector<Vec2>& points) {
    Dedup d;
    std::map<std::pair<double, double>, int> index;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto key = std::make_pair(points[i].x, points[i].y);
        auto it = index.find(key);
        if (it == index.end()) {
            index.emplace(key, static_cast<int>(d.reps.size()));
            d.reps.push_back(points[i]);
            d.members.push_back({static_cast<int>(i)});
        } else {
            d.members[it->second].push_back(static_cast<int>(i));
        }
    }
    return d;
}

std::vector<Edge> mirror_edges(const Dedup& d, const std::vector<Edge>& rep_edges) {
    std::vector<Edge> out;
    for (const auto& [ra, rb] : rep_edges)
        for (const int a : d.members[ra])
            for (const int b : d.members[rb]) out.push_back(make_edge(a, b));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> gabriel_edges(const std::vector<Vec2>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            bool open = true;
            for (int c = 0; c < n && open; ++c) {
                if (c == a || c == b) continue;
                if (dot(p[c] - p[a], p[c] - p[b]) <= 0.0) open = false;
            }
            if (open) edges.push_back({a, b});
        }
    return edges;
}

std::vector<Edge> rng_edges(const std::vector<Vec2>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<Edge> edges;
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b) {
            const double dab = dist2(p[a], p[b]);
            bool open = true;
            for (int c = 0; c < n && open; ++c) {
                if (c == a || c == b) continue;
                if (std::max(dist2(p[a], p[c]), dist2(p[b], p[c])) < dab) open = false;
            }
            if (open) edges.push_back({a, b});
        }
    return edges;
}

std::vector<Edge> emst_edges(const std::vector<Vec2>& p) {
    const int n = static_cast<int>(p.size());
    std::vector<Edge> edges;
    if (n <= 1) return edges;
    std::vector<bool> in_tree(n, false);
    std::vector<double> best(n, std::numeric_limits<double>::infinity());
    std::vector<int> from(n, -1);
    in_tree[0] = true;
    for (int v = 1; v < n; ++v) {
        best[v] = dist2(p[0], p[v]);
        from[v] = 0;
    }
    for (int step = 1; step < n; ++step) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            if (pick < 0 || best[v] < best[pick] ||
                (best[v] == best[pick] && make_edge(from[v], v) < make_edge(from[pick], pick)))
                pick = v;
        }
        edges.push_back(make_edge(from[pick], pick));
        in_tree[pick] = true;
        for (int v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const double d = dist2(p[pick], p[v]);
            if (d < best[v] || (d == best[v] && make_edge(pick, v) < make_edge(from[v], v))) {
                best[v] = d;
                from[v] = pick;
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    return edges;
}

ShapeGraph assemble(ShapeKind kind, const std::vector<Vec2>& points,
                    std::vector<Edge> (*construct)(const std::vector<Vec2>&)) {
    check_finite(points);
    ShapeGraph s;
    s.kind = kind;
    s.n = static_cast<int>(points.size());
    const Dedup d = dedup_points(points);
    s.edges = mirror_edges(d, construct(d.reps));
    return s;
}

} // namespace

ShapeGraph gabriel(const std::vector<Vec2>& points) {
    return assemble(ShapeKind::GG, points, gabriel_edges);
}

ShapeGraph rng(const std::vector<Vec2>& points) {
    return assemble(ShapeKind::RNG, points, rng_edges);
}

ShapeGraph emst(const std::vector<Vec2>& points) {
    return assemble(ShapeKind::EMST, points, emst_edges);
}

ShapeGraph build_shape(ShapeKind kind, const std::vector<Vec2>& points) {
    switch (kind) {
        case ShapeKind::EMST: return emst(points);
        case ShapeKind::RNG: return rng(points);
        case ShapeKind::GG: return gabriel(points);
    }
    throw std::logic_error("bad shape enum");
}

void save_shape(const ShapeGraph& s, std::ostream& out) {
    out << "# shape " << to_string(s.kind) << "\n";
    for (const auto& [u, v] : s.edges) out << u << " " << v << "\n";
}

} // namespace sparsedraw
