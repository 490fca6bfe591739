#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sparsedraw/graph.hpp"

namespace sparsedraw {

/// Eigendecomposition of a symmetric matrix: values ascending, column i of
/// `vectors` paired with values[i], vectors orthonormal.
struct Spectrum {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;
};

/// Per-edge effective resistance, aligned with Graph::edges. For a simple
/// unweighted graph every value lies in (0, 1]; bridges hit 1 exactly.
struct ResistanceTable {
    std::vector<double> r;
    double rank_tolerance = 0.0;
};

/// Smallest epsilon for which the two-sided spectral-approximation bound holds.
/// Undefined (nullopt) when the subgraph has strictly more components.
struct EpsilonReport {
    std::optional<double> epsilon;
    bool null_space_mismatch = false;
};

/// Throws if L is not symmetric within 1e-9.
Spectrum eigendecompose(const DenseMatrix& L);

/// Moore-Penrose inverse via the spectral formula: eigenvalues below
/// tau = 1e-9 * lambda_max are treated as the null space.
DenseMatrix pseudoinverse(const DenseMatrix& L);
DenseMatrix pseudoinverse(const DenseMatrix& L, double* rank_tolerance_out);

ResistanceTable effective_resistance(const Graph& g);

/// Resistance between an arbitrary same-component pair (not only edges).
double pair_resistance(const DenseMatrix& pinv, int u, int v);

/// Commute distance 2m * r_uv; throws if u and v are in different components.
double commute_distance(const Graph& g, int u, int v);

/// Exact verifier for the two-sided approximation bound, computed by a dense
/// generalized eigendecomposition on the orthogonal complement of the shared
/// null space. Requires sub to be an edge-subgraph of g on the same vertices.
EpsilonReport spectral_epsilon(const Graph& g, const Graph& sub);

/// CSV "u,v,r" with a leading "# rank_tolerance ..." line; used for inspection
/// and as the on-disk cache format.
void save_resistance_csv(const Graph& g, const ResistanceTable& t, std::ostream& out);
ResistanceTable load_resistance_csv(const Graph& g, std::istream& in);

/// Loads the table cached under content_hash(g) in cache_dir, or computes and
/// stores it. Empty cache_dir disables caching.
ResistanceTable cached_effective_resistance(const Graph& g, const std::string& cache_dir);

} // namespace sparsedraw
