#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sparsedraw/graph.hpp"
#include "sparsedraw/spectral.hpp"

namespace sparsedraw {

enum class Method { RE, SSS, DSS };

Method method_from_string(const std::string& s);
std::string to_string(Method m);

/// An edge selection: exactly m_prime edges of the source graph, stored in
/// canonical order. `seed` is recorded for provenance (DSS ignores it).
struct Sparsification {
    Method method = Method::RE;
    int m_prime = 0;
    std::uint64_t seed = 0;
    std::vector<Edge> selected;
    int source_m = 0;
};

/// Uniform sampling without replacement (partial Fisher-Yates shuffle).
Sparsification sample_re(const Graph& g, int m_prime, std::uint64_t seed);

/// Resistance-proportional sampling without replacement via exponential keys:
/// key_e = -ln(U_e) / r_e, keep the m_prime smallest.
Sparsification sample_sss(const Graph& g, const ResistanceTable& r, int m_prime,
                          std::uint64_t seed);

/// The m_prime edges of largest resistance. Resistances within the 1e-9
/// tolerance count as equal; ties break by lexicographic edge order.
Sparsification select_dss(const Graph& g, const ResistanceTable& r, int m_prime);

struct SparsifyResult {
    Sparsification selection;
    Graph proxy; // induced_by_edges(g, selection.selected)
};

/// Density-driven front end: m' = max(1, round(density * m)). Resistance for
/// SSS/DSS is taken from `precomputed` when given, else computed (and pulled
/// from / stored in cache_dir when non-empty).
SparsifyResult sparsify(const Graph& g, Method method, double density, std::uint64_t seed,
                        const ResistanceTable* precomputed = nullptr,
                        const std::string& cache_dir = {});

/// JSON sidecar {method, m_prime, seed, source_hash} recorded next to a saved
/// proxy edge list.
void save_sparsification_sidecar(const Sparsification& s, const std::string& source_hash,
                                 std::ostream& out);

} // namespace sparsedraw
