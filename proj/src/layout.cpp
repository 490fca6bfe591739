#include "sparsedraw/layout.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "sparsedraw/numio.hpp"
#include "sparsedraw/random.hpp"

namespace sparsedraw {

namespace {

constexpr double kInitialTemperature = 0.1;
constexpr double kRefineTemperature = 0.05;
constexpr int kRefineIterations = 60;
constexpr int kCoarsestSize = 50;

double spring_length(int component_size) {
    return 1.0 / std::sqrt(static_cast<double>(component_size));
}

/// Fixed escape direction for exactly coincident vertices, a pure function of
/// the vertex pair so reruns agree.
Vec2 coincident_dir(int u, int v, std::uint64_t salt) {
    const int a = std::min(u, v);
    const int b = std::max(u, v);
    const std::uint64_t h =
        mix_seed(salt, (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint64_t>(b));
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(h >> 11) * 0x1.0p-53;
    Vec2 dir{std::cos(angle), std::sin(angle)};
    return u < v ? dir : Vec2{-dir.x, -dir.y};
}

struct ComponentView {
    std::vector<int> verts;            // global ids, ascending
    std::vector<std::pair<int, int>> edges; // local indices
};

std::vector<ComponentView> split_components(const Graph& g) {
    const Components comps = connected_components(g);
    std::vector<ComponentView> views(comps.count);
    std::vector<int> local(g.n);
    for (int v = 0; v < g.n; ++v) {
        auto& view = views[comps.label[v]];
        local[v] = static_cast<int>(view.verts.size());
        view.verts.push_back(v);
    }
    for (const auto& [u, v] : g.edges)
        views[comps.label[u]].edges.push_back({local[u], local[v]});
    return views;
}

/// One spring-electrical schedule on a single component, in place. Repulsion
/// is a full pairwise scan in fixed vertex order; displacement per iteration
/// is capped by a linearly cooling temperature.
void fr_component(std::vector<Vec2>& positions, const ComponentView& view, int iterations,
                  double t0, std::uint64_t salt) {
    const int nc = static_cast<int>(view.verts.size());
    if (nc <= 1 || iterations <= 0) return;
    const double k = spring_length(nc);
    std::vector<Vec2> p(nc);
    for (int i = 0; i < nc; ++i) p[i] = positions[view.verts[i]];
    std::vector<Vec2> disp(nc);
    for (int it = 0; it < iterations; ++it) {
        const double t = t0 * static_cast<double>(iterations - it) / iterations;
        for (int i = 0; i < nc; ++i) {
            Vec2 f{0.0, 0.0};
            const Vec2 pi = p[i];
            for (int j = 0; j < nc; ++j) {
                if (j == i) continue;
                Vec2 d = pi - p[j];
                double d2 = norm2(d);
                if (d2 == 0.0) {
                    d = coincident_dir(view.verts[i], view.verts[j], salt);
                    d2 = 1e-24;
                }
                const double s = k * k / d2;
                f.x += s * d.x;
                f.y += s * d.y;
            }
            disp[i] = f;
        }
        for (const auto& [lu, lv] : view.edges) {
            const Vec2 d = p[lu] - p[lv];
            const double dn = norm(d);
            if (dn == 0.0) continue;
            const Vec2 pull = (dn / k) * d;
            disp[lu] = disp[lu] - pull;
            disp[lv] = disp[lv] + pull;
        }
        for (int i = 0; i < nc; ++i) {
            const double len = norm(disp[i]);
            if (len > 0.0) p[i] = p[i] + (std::min(len, t) / len) * disp[i];
        }
    }
    for (int i = 0; i < nc; ++i) positions[view.verts[i]] = p[i];
}

void run_components(const Graph& g, std::vector<Vec2>& positions, int iterations, double t0,
                    std::uint64_t salt) {
    for (const auto& view : split_components(g))
        fr_component(positions, view, iterations, t0, salt);
}

struct Box {
    double lo_x = 0.0, lo_y = 0.0, hi_x = 0.0, hi_y = 0.0;
    double width() const { return hi_x - lo_x; }
    double height() const { return hi_y - lo_y; }
};

Box bounding_box(const std::vector<Vec2>& positions, const std::vector<int>& verts) {
    Box b{positions[verts[0]].x, positions[verts[0]].y, positions[verts[0]].x,
          positions[verts[0]].y};
    for (const int v : verts) {
        b.lo_x = std::min(b.lo_x, positions[v].x);
        b.lo_y = std::min(b.lo_y, positions[v].y);
        b.hi_x = std::max(b.hi_x, positions[v].x);
        b.hi_y = std::max(b.hi_y, positions[v].y);
    }
    return b;
}

/// Components land on a square grid, spaced by the largest component extent.
void pack_components(const Graph& g, std::vector<Vec2>& positions) {
    const auto views = split_components(g);
    const int c = static_cast<int>(views.size());
    if (c <= 1) return;
    std::vector<Box> boxes;
    boxes.reserve(views.size());
    double extent = 0.1;
    for (const auto& view : views) {
        boxes.push_back(bounding_box(positions, view.verts));
        extent = std::max({extent, boxes.back().width(), boxes.back().height()});
    }
    const double cell = 1.5 * extent;
    const int cols = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(c))));
    for (int i = 0; i < c; ++i) {
        const double cx = (i % cols) * cell + cell / 2.0;
        const double cy = (i / cols) * cell + cell / 2.0;
        const Vec2 shift{cx - (boxes[i].lo_x + boxes[i].hi_x) / 2.0,
                         cy - (boxes[i].lo_y + boxes[i].hi_y) / 2.0};
        for (const int v : views[i].verts) positions[v] = positions[v] + shift;
    }
}

/// Final pass: exactly coincident vertices get a seeded epsilon displacement.
void nudge_coincident(std::vector<Vec2>& positions, std::uint64_t seed) {
    std::map<std::pair<double, double>, int> seen;
    std::mt19937_64 rng(mix_seed(seed, 0x6e756467657265ULL));
    double span = 0.0;
    for (const Vec2 p : positions) span = std::max({span, std::abs(p.x), std::abs(p.y)});
    const double base = 1e-9 * std::max(span, 1.0);
    for (auto& p : positions) {
        double radius = base;
        while (seen.count({p.x, p.y}) > 0) {
            const double angle = 2.0 * std::numbers::pi * uniform01(rng);
            p.x += radius * std::cos(angle);
            p.y += radius * std::sin(angle);
            radius *= 2.0;
        }
        seen[{p.x, p.y}] = 1;
    }
}

} // namespace

std::vector<Vec2> initial_placement(const Graph& g, std::uint64_t seed) {
    std::vector<Vec2> positions(static_cast<std::size_t>(g.n));
    std::mt19937_64 rng(seed);
    for (auto& p : positions) {
        p.x = uniform01(rng);
        p.y = uniform01(rng);
    }
    return positions;
}

Drawing layout_fr(const Graph& g, std::uint64_t seed, int iterations) {
    if (g.n < 1) throw std::invalid_argument("layout requires at least one vertex");
    Drawing d;
    d.graph_ref = content_hash(g);
    d.seed = seed;
    d.algorithm = "fr";
    if (g.n == 1) {
        d.positions.assign(1, Vec2{0.5, 0.5});
        return d;
    }
    d.positions = initial_placement(g, seed);
    const int iters = iterations > 0 ? iterations : 4 * g.n;
    run_components(g, d.positions, iters, kInitialTemperature, seed);
    pack_components(g, d.positions);
    nudge_coincident(d.positions, seed);
    return d;
}

namespace {

struct Contraction {
    Graph coarse;
    std::vector<double> weight; // aligned to coarse.edges
    std::vector<int> cluster;   // fine vertex -> coarse vertex
};

/// Heavy matching: edges visited by descending weight (lexicographic within a
/// weight class); matched pairs merge, everyone else survives alone.
Contraction contract_once(const Graph& g, const std::vector<double>& weight) {
    std::vector<int> order(g.edges.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (weight[a] != weight[b]) return weight[a] > weight[b];
        return g.edges[a] < g.edges[b];
    });
    std::vector<int> mate(g.n, -1);
    for (const int e : order) {
        const auto& [u, v] = g.edges[e];
        if (mate[u] < 0 && mate[v] < 0) {
            mate[u] = v;
            mate[v] = u;
        }
    }
    Contraction out;
    out.cluster.assign(g.n, -1);
    int next = 0;
    for (int v = 0; v < g.n; ++v) {
        if (out.cluster[v] >= 0) continue;
        out.cluster[v] = next;
        if (mate[v] >= 0) out.cluster[mate[v]] = next;
        ++next;
    }
    std::map<Edge, double> acc;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
        const int cu = out.cluster[g.edges[i].first];
        const int cv = out.cluster[g.edges[i].second];
        if (cu != cv) acc[make_edge(cu, cv)] += weight[i];
    }
    std::vector<Edge> edges;
    edges.reserve(acc.size());
    out.weight.reserve(acc.size());
    for (const auto& [e, w] : acc) {
        edges.push_back(e);
        out.weight.push_back(w);
    }
    out.coarse = make_graph(next, edges);
    return out;
}

} // namespace

Graph coarsen_once(const Graph& g, std::vector<int>* cluster_out) {
    Contraction c = contract_once(g, std::vector<double>(g.edges.size(), 1.0));
    if (cluster_out != nullptr) *cluster_out = std::move(c.cluster);
    return std::move(c.coarse);
}

Drawing layout_multilevel(const Graph& g, std::uint64_t seed) {
    if (g.n < 1) throw std::invalid_argument("layout requires at least one vertex");
    if (g.n <= kCoarsestSize) return layout_fr(g, seed);

    std::vector<Graph> levels{g};
    std::vector<std::vector<int>> cluster_maps;
    std::vector<double> weight(g.edges.size(), 1.0);
    while (levels.back().n > kCoarsestSize) {
        Contraction c = contract_once(levels.back(), weight);
        if (c.coarse.n == levels.back().n) break;
        cluster_maps.push_back(std::move(c.cluster));
        weight = std::move(c.weight);
        levels.push_back(std::move(c.coarse));
    }

    const std::size_t depth = levels.size() - 1;
    Drawing coarsest = layout_fr(levels.back(), mix_seed(seed, depth));
    std::vector<Vec2> pos = std::move(coarsest.positions);
    for (std::size_t lvl = depth; lvl-- > 0;) {
        const Graph& fine = levels[lvl];
        const double scale =
            std::sqrt(static_cast<double>(fine.n) / static_cast<double>(levels[lvl + 1].n));
        const double k = spring_length(fine.n);
        std::mt19937_64 jitter(mix_seed(seed, 0x4a49545445520000ULL + lvl));
        std::vector<Vec2> fine_pos(static_cast<std::size_t>(fine.n));
        for (int v = 0; v < fine.n; ++v) {
            const Vec2 base = scale * pos[cluster_maps[lvl][v]];
            const double angle = 2.0 * std::numbers::pi * uniform01(jitter);
            const double radius = 0.25 * k * uniform01(jitter);
            fine_pos[v] = {base.x + radius * std::cos(angle), base.y + radius * std::sin(angle)};
        }
        run_components(fine, fine_pos, kRefineIterations, kRefineTemperature,
                       mix_seed(seed, lvl));
        pos = std::move(fine_pos);
    }
    pack_components(g, pos);
    nudge_coincident(pos, seed);

    Drawing d;
    d.positions = std::move(pos);
    d.graph_ref = content_hash(g);
    d.seed = seed;
    d.algorithm = "multilevel";
    return d;
}

double layout_energy(const Graph& g, const std::vector<Vec2>& positions) {
    if (static_cast<int>(positions.size()) != g.n)
        throw std::invalid_argument("position count does not match vertex count");
    double energy = 0.0;
    for (const auto& view : split_components(g)) {
        const double k = spring_length(static_cast<int>(view.verts.size()));
        for (const auto& [lu, lv] : view.edges) {
            const double d = dist(positions[view.verts[lu]], positions[view.verts[lv]]);
            energy += d * d * d / (3.0 * k);
        }
        for (std::size_t i = 0; i < view.verts.size(); ++i)
            for (std::size_t j = i + 1; j < view.verts.size(); ++j) {
                const double d =
                    std::max(dist(positions[view.verts[i]], positions[view.verts[j]]), 1e-12);
                energy -= k * k * std::log(d);
            }
    }
    return energy;
}

void save_drawing_csv(const Graph& g, const Drawing& d, std::ostream& out) {
    if (static_cast<int>(d.positions.size()) != g.n)
        throw std::invalid_argument("drawing does not match graph");
    out << "label,x,y\n";
    for (int v = 0; v < g.n; ++v)
        out << g.label(v) << "," << fmt_double(d.positions[v].x) << ","
            << fmt_double(d.positions[v].y) << "\n";
}

void save_drawing_csv_file(const Graph& g, const Drawing& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    save_drawing_csv(g, d, out);
}

NamedPoints load_drawing_csv(std::istream& in) {
    NamedPoints np;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1 && line == "label,x,y") continue;
        const auto c2 = line.rfind(',');
        const auto c1 = c2 == std::string::npos ? std::string::npos : line.rfind(',', c2 - 1);
        if (c1 == std::string::npos || c1 == 0)
            throw std::runtime_error("line " + std::to_string(line_no) +
                                     ": expected label,x,y");
        np.labels.push_back(line.substr(0, c1));
        const std::string where = "line " + std::to_string(line_no);
        np.points.push_back(Vec2{parse_double(line.substr(c1 + 1, c2 - c1 - 1), where + " x"),
                                 parse_double(line.substr(c2 + 1), where + " y")});
    }
    return np;
}

NamedPoints load_drawing_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    try {
        return load_drawing_csv(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void render_svg(const Graph& g, const std::vector<Vec2>& positions, std::ostream& out,
                const std::vector<Edge>* overlay) {
    if (static_cast<int>(positions.size()) != g.n)
        throw std::invalid_argument("position count does not match vertex count");
    double lo_x = 0.0, lo_y = 0.0, hi_x = 1.0, hi_y = 1.0;
    if (g.n > 0) {
        lo_x = hi_x = positions[0].x;
        lo_y = hi_y = positions[0].y;
        for (const Vec2 p : positions) {
            lo_x = std::min(lo_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_x = std::max(hi_x, p.x);
            hi_y = std::max(hi_y, p.y);
        }
    }
    const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-6});
    const double margin = 0.05 * span;
    const auto emit_line = [&](const Edge& e) {
        out << "<line x1=\"" << fmt_double(positions[e.first].x) << "\" y1=\""
            << fmt_double(positions[e.first].y) << "\" x2=\""
            << fmt_double(positions[e.second].x) << "\" y2=\""
            << fmt_double(positions[e.second].y) << "\"/>\n";
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << fmt_double(lo_x - margin)
        << " " << fmt_double(lo_y - margin) << " " << fmt_double(span + 2.0 * margin) << " "
        << fmt_double(span + 2.0 * margin) << "\">\n";
    out << "<g stroke=\"#556\" stroke-width=\"" << fmt_double(0.002 * span)
        << "\" stroke-opacity=\"0.7\">\n";
    for (const auto& e : g.edges) emit_line(e);
    out << "</g>\n";
    if (overlay != nullptr) {
        out << "<g stroke=\"#c22\" stroke-width=\"" << fmt_double(0.003 * span) << "\">\n";
        for (const auto& e : *overlay) emit_line(e);
        out << "</g>\n";
    }
    out << "<g fill=\"#223\">\n";
    for (const Vec2 p : positions)
        out << "<circle cx=\"" << fmt_double(p.x) << "\" cy=\"" << fmt_double(p.y)
            << "\" r=\"" << fmt_double(0.005 * span) << "\"/>\n";
    out << "</g>\n</svg>\n";
}

} // namespace sparsedraw
