#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedraw/geometry.hpp"
#include "sparsedraw/graph.hpp"

namespace sparsedraw {

enum class ShapeKind { EMST, RNG, GG };

ShapeKind shape_from_string(const std::string& s);
std::string to_string(ShapeKind k);

/// Proximity graph over point indices. Vertex count matches the input point
/// set, duplicates included.
struct ShapeGraph {
    ShapeKind kind = ShapeKind::GG;
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::vector<int>> adjacency() const;
};

/// Edge (a,b) iff no third point lies inside or on the closed disk with
/// diameter ab.
ShapeGraph gabriel(const std::vector<Vec2>& points);

/// Edge (a,b) iff no point c has max(d(a,c), d(b,c)) < d(a,b).
ShapeGraph rng(const std::vector<Vec2>& points);

/// Euclidean minimum spanning tree, Prim with full scans; equal-weight
/// candidates break toward the lexicographically smaller index pair.
ShapeGraph emst(const std::vector<Vec2>& points);

ShapeGraph build_shape(ShapeKind kind, const std::vector<Vec2>& points);

/// "# shape <kind>" header, then one "u v" index pair per line.
void save_shape(const ShapeGraph& s, std::ostream& out);

} // namespace sparsedraw
