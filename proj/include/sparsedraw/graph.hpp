#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace sparsedraw {

using Edge = std::pair<int, int>;
using DenseMatrix = Eigen::MatrixXd;

inline Edge make_edge(int a, int b) { return a < b ? Edge{a, b} : Edge{b, a}; }

/// Undirected simple graph. Edges are kept canonical: u < v, no duplicates,
/// no self-loops, sorted lexicographically. `labels` carries the original
/// string identifiers so vertices stay identifiable through induced subgraphs;
/// when empty, the label of vertex i is its decimal index.
struct Graph {
    int n = 0;
    std::vector<Edge> edges;
    std::vector<std::string> labels;

    int num_edges() const { return static_cast<int>(edges.size()); }
    std::string label(int v) const;
    bool has_edge(Edge e) const;
    std::vector<std::vector<int>> adjacency() const;
    std::vector<int> degrees() const;
};

/// Canonicalizes (sort, dedup, drop self-loops) and validates endpoint ranges.
Graph make_graph(int n, std::vector<Edge> edges, std::vector<std::string> labels = {});

/// Edge-list text: one "u v" pair per line, arbitrary string tokens, lines
/// starting with '#' or '%' ignored, extra tokens after the first two ignored.
/// String ids are mapped to dense indices in first-seen order.
Graph load_edge_list(std::istream& in);
Graph load_edge_list_file(const std::string& path);

/// MatrixMarket coordinate reader (pattern or real, symmetric or general);
/// entries become undirected edges, diagonal entries are dropped.
Graph load_matrix_market(std::istream& in);
Graph load_matrix_market_file(const std::string& path);

/// Canonical serialization: "label_u label_v\n" per edge (isolated vertices are
/// listed in a trailing "# vertex <label>" comment so round-trips keep n).
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

DenseMatrix laplacian(const Graph& g);

struct Components {
    int count = 0;
    std::vector<int> label; // contiguous ids from 0, in order of first appearance
};
Components connected_components(const Graph& g);

/// Subgraph on exactly the vertices incident to `es` (densely re-indexed,
/// original labels retained) with exactly the edges `es`.
Graph induced_by_edges(const Graph& g, const std::vector<Edge>& es);

/// Subgraph with the same vertex set and the edge subset `es`; used by the
/// spectral approximation verifier, which compares Laplacians of equal size.
Graph subgraph_same_vertices(const Graph& g, const std::vector<Edge>& es);

/// Restriction of g to its largest connected component (ties by smallest id).
Graph largest_component(const Graph& g);

double relative_density(const Graph& g, int m_prime);

/// 64-bit FNV-1a over the canonical structure (n + edge list), hex-encoded.
/// Keys resistance caches and ties drawings to the graph they lay out.
std::string content_hash(const Graph& g);

} // namespace sparsedraw
