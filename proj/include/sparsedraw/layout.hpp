#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedraw/geometry.hpp"
#include "sparsedraw/graph.hpp"

namespace sparsedraw {

/// A straight-line drawing: one finite position per vertex.
struct Drawing {
    std::vector<Vec2> positions;
    std::string graph_ref; // content hash of the laid-out graph
    std::uint64_t seed = 0;
    std::string algorithm;
};

/// The seeded uniform-square starting positions used by layout_fr.
std::vector<Vec2> initial_placement(const Graph& g, std::uint64_t seed);

/// Spring-electrical layout with linear cooling. Natural spring length is
/// 1/sqrt(nc) per component of size nc; components are laid out independently
/// and packed on a grid. iterations <= 0 selects the default of 4 * n.
/// Deterministic for fixed (g, seed, iterations).
Drawing layout_fr(const Graph& g, std::uint64_t seed, int iterations = 0);

/// One heavy-matching contraction with unit edge weights (the multilevel
/// coarsening step). cluster_out, when given, receives the fine->coarse map.
Graph coarsen_once(const Graph& g, std::vector<int>* cluster_out = nullptr);

/// Multilevel variant: heavy-matching coarsening to <= 50 vertices, coarsest
/// level laid out by layout_fr, positions prolonged with seeded jitter and
/// refined per level. Graphs with n <= 50 are handed to layout_fr unchanged.
Drawing layout_multilevel(const Graph& g, std::uint64_t seed);

/// Sum of spring potentials d^3/(3k) over edges and repulsion potentials
/// -k^2 ln d over same-component vertex pairs, with per-component k.
double layout_energy(const Graph& g, const std::vector<Vec2>& positions);

/// "label,x,y" rows, one per vertex, in vertex order.
void save_drawing_csv(const Graph& g, const Drawing& d, std::ostream& out);
void save_drawing_csv_file(const Graph& g, const Drawing& d, const std::string& path);

struct NamedPoints {
    std::vector<std::string> labels;
    std::vector<Vec2> points;
};

NamedPoints load_drawing_csv(std::istream& in);
NamedPoints load_drawing_csv_file(const std::string& path);

/// Straight-line SVG rendering of a drawing, optionally with a second edge set
/// drawn on top (used for shape overlays).
void render_svg(const Graph& g, const std::vector<Vec2>& positions, std::ostream& out,
                const std::vector<Edge>* overlay = nullptr);

} // namespace sparsedraw
