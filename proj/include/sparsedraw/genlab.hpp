#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsedraw/graph.hpp"

namespace sparsedraw {

struct HoleSpec {
    int core_size = 0;
    double core_density = 1.0;
};

/// Dense cores on a sparse connected periphery, each core attached by exactly
/// attachment_edges edges.
struct BlackHoleSpec {
    std::vector<HoleSpec> holes;
    int periphery_size = 0;
    int periphery_edges = 0;
    int attachment_edges = 1;
    std::uint64_t seed = 0;
};

Graph generate_blackhole(const BlackHoleSpec& spec);

/// w x h lattice; m = w(h-1) + h(w-1).
Graph generate_grid(int w, int h);

/// Preferential attachment from a (k+1)-clique, k = edges_per_step new edges
/// per vertex; deterministic per seed.
Graph generate_scale_free(int n, int edges_per_step, std::uint64_t seed);

/// Generator specs as JSON, {"type": "blackhole"|"grid"|"scale_free", ...};
/// used by experiment plans and corpus manifests.
Graph generate_from_json(const nlohmann::json& spec);
nlohmann::json blackhole_to_json(const BlackHoleSpec& spec);

} // namespace sparsedraw
