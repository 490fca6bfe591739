#pragma once

#include <string>
#include <vector>

#include "sparsedraw/geometry.hpp"
#include "sparsedraw/graph.hpp"
#include "sparsedraw/shape.hpp"

namespace sparsedraw {

/// Per-vertex Jaccard terms against the original graph, in original vertex
/// order. Terms lie in [0,1]; a vertex absent from the proxy gets an empty
/// shape neighbourhood; 0/0 terms count as 1.
struct QualityBreakdown {
    double q = 0.0;
    std::vector<double> per_vertex;
};

/// Q(D', G): mean Jaccard similarity between original neighbourhoods and the
/// shape-graph neighbourhoods of the proxy drawing. Vertices align by label;
/// a proxy label missing from the original is an error.
QualityBreakdown jaccard_quality_detail(const Graph& original, const Graph& proxy,
                                        const std::vector<Vec2>& proxy_positions,
                                        ShapeKind kind);

double jaccard_quality(const Graph& original, const Graph& proxy,
                       const std::vector<Vec2>& proxy_positions, ShapeKind kind);

/// Same metric for a precomputed shape graph over the proxy's points.
QualityBreakdown jaccard_quality_against_shape(const Graph& original, const Graph& proxy,
                                               const ShapeGraph& shape);

struct Ratio {
    double value = 0.0;
    bool defined = false; // false when the baseline quality is zero
};

Ratio quality_ratio(double q_method, double q_re);

} // namespace sparsedraw
