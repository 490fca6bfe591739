#include "sparsedraw/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "sparsedraw/numio.hpp"

namespace sparsedraw {

std::string Graph::label(int v) const {
    if (v < 0 || v >= n) throw std::out_of_range("vertex index out of range");
    if (!labels.empty()) return labels[v];
    return std::to_string(v);
}

bool Graph::has_edge(Edge e) const {
    return std::binary_search(edges.begin(), edges.end(), make_edge(e.first, e.second));
}

std::vector<std::vector<int>> Graph::adjacency() const {
    std::vector<std::vector<int>> adj(n);
    for (auto [u, v] : edges) {
        adj[u].push_back(v);
        adj[v].push_back(u);
    }
    return adj;
}

std::vector<int> Graph::degrees() const {
    std::vector<int> deg(n, 0);
    for (auto [u, v] : edges) {
        ++deg[u];
        ++deg[v];
    }
    return deg;
}

Graph make_graph(int n, std::vector<Edge> edges, std::vector<std::string> labels) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    if (!labels.empty() && static_cast<int>(labels.size()) != n)
        throw std::invalid_argument("label count does not match vertex count");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw std::invalid_argument("edge endpoint out of range: (" + std::to_string(a) +
                                        "," + std::to_string(b) + ")");
        if (a == b) continue;
        canon.push_back(make_edge(a, b));
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    return Graph{n, std::move(canon), std::move(labels)};
}

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

} // namespace

Graph load_edge_list(std::istream& in) {
    std::unordered_map<std::string, int> index;
    std::vector<std::string> labels;
    std::vector<Edge> edges;
    auto intern = [&](std::string_view tok) {
        auto it = index.find(std::string(tok));
        if (it != index.end()) return it->second;
        int id = static_cast<int>(labels.size());
        labels.emplace_back(tok);
        index.emplace(labels.back(), id);
        return id;
    };

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && (line[0] == '#' || line[0] == '%')) continue;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks.size() == 1)
            throw std::runtime_error("edge list parse error at line " + std::to_string(lineno) +
                                     ": expected two tokens, got one");
        int u = intern(toks[0]);
        int v = intern(toks[1]);
        if (u != v) edges.push_back(make_edge(u, v));
    }
    if (labels.empty()) throw std::runtime_error("edge list parse error: no edges");
    const int n = static_cast<int>(labels.size());
    return make_graph(n, std::move(edges), std::move(labels));
}

Graph load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    try {
        return load_edge_list(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

Graph load_matrix_market(std::istream& in) {
    std::string line;
    bool have_size = false;
    long long rows = 0, cols = 0, nnz = 0;
    std::vector<Edge> edges;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line[0] == '%') continue;
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (!have_size) {
            if (toks.size() < 3)
                throw std::runtime_error("MatrixMarket parse error at line " +
                                         std::to_string(lineno) + ": bad size line");
            rows = parse_int(toks[0], "rows");
            cols = parse_int(toks[1], "cols");
            nnz = parse_int(toks[2], "nnz");
            (void)nnz;
            if (rows != cols)
                throw std::runtime_error("MatrixMarket: matrix is not square");
            have_size = true;
            continue;
        }
        if (toks.size() < 2)
            throw std::runtime_error("MatrixMarket parse error at line " + std::to_string(lineno));
        long long a = parse_int(toks[0], "row index");
        long long b = parse_int(toks[1], "col index");
        if (a < 1 || a > rows || b < 1 || b > rows)
            throw std::runtime_error("MatrixMarket: index out of range at line " +
                                     std::to_string(lineno));
        if (a == b) continue; // diagonal entry, not an edge
        edges.push_back(make_edge(static_cast<int>(a - 1), static_cast<int>(b - 1)));
    }
    if (!have_size) throw std::runtime_error("MatrixMarket parse error: no size line");
    return make_graph(static_cast<int>(rows), std::move(edges));
}

Graph load_matrix_market_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    try {
        return load_matrix_market(in);
    } catch (const std::runtime_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

void save_edge_list(const Graph& g, std::ostream& out) {
    std::vector<bool> incident(g.n, false);
    for (auto [u, v] : g.edges) {
        out << g.label(u) << ' ' << g.label(v) << '\n';
        incident[u] = incident[v] = true;
    }
    for (int v = 0; v < g.n; ++v)
        if (!incident[v]) out << "# vertex " << g.label(v) << '\n';
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    save_edge_list(g, out);
}

DenseMatrix laplacian(const Graph& g) {
    DenseMatrix L = DenseMatrix::Zero(g.n, g.n);
    const auto deg = g.degrees();
    for (int v = 0; v < g.n; ++v) L(v, v) = static_cast<double>(deg[v]);
    for (auto [u, v] : g.edges) {
        L(u, v) = -1.0;
        L(v, u) = -1.0;
    }
    return L;
}

Components connected_components(const Graph& g) {
    Components c;
    c.label.assign(g.n, -1);
    const auto adj = g.adjacency();
    std::vector<int> stack;
    for (int s = 0; s < g.n; ++s) {
        if (c.label[s] != -1) continue;
        int id = c.count++;
        c.label[s] = id;
        stack.push_back(s);
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adj[u]) {
                if (c.label[w] == -1) {
                    c.label[w] = id;
                    stack.push_back(w);
                }
            }
        }
    }
    return c;
}

Graph induced_by_edges(const Graph& g, const std::vector<Edge>& es) {
    std::vector<int> verts;
    verts.reserve(es.size() * 2);
    for (auto e : es) {
        if (!g.has_edge(make_edge(e.first, e.second)))
            throw std::invalid_argument("induced_by_edges: edge (" + std::to_string(e.first) +
                                        "," + std::to_string(e.second) + ") not present");
        verts.push_back(e.first);
        verts.push_back(e.second);
    }
    std::sort(verts.begin(), verts.end());
    verts.erase(std::unique(verts.begin(), verts.end()), verts.end());

    std::vector<int> remap(g.n, -1);
    std::vector<std::string> labels;
    labels.reserve(verts.size());
    for (size_t i = 0; i < verts.size(); ++i) {
        remap[verts[i]] = static_cast<int>(i);
        labels.push_back(g.label(verts[i]));
    }
    std::vector<Edge> mapped;
    mapped.reserve(es.size());
    for (auto e : es) mapped.push_back(make_edge(remap[e.first], remap[e.second]));
    return make_graph(static_cast<int>(verts.size()), std::move(mapped), std::move(labels));
}

Graph subgraph_same_vertices(const Graph& g, const std::vector<Edge>& es) {
    for (auto e : es)
        if (!g.has_edge(make_edge(e.first, e.second)))
            throw std::invalid_argument("subgraph_same_vertices: edge (" +
                                        std::to_string(e.first) + "," + std::to_string(e.second) +
                                        ") not present");
    return make_graph(g.n, es, g.labels);
}

Graph largest_component(const Graph& g) {
    if (g.n == 0) return g;
    const auto comp = connected_components(g);
    std::vector<int> size(comp.count, 0);
    for (int v = 0; v < g.n; ++v) ++size[comp.label[v]];
    int best = 0;
    for (int c = 1; c < comp.count; ++c)
        if (size[c] > size[best]) best = c; // first component wins ties (smallest ids)
    std::vector<Edge> kept;
    for (auto e : g.edges)
        if (comp.label[e.first] == best) kept.push_back(e);
    if (kept.empty()) {
        // largest component is a single vertex
        for (int v = 0; v < g.n; ++v)
            if (comp.label[v] == best) return Graph{1, {}, {g.label(v)}};
    }
    return induced_by_edges(g, kept);
}

double relative_density(const Graph& g, int m_prime) {
    const int m = g.num_edges();
    if (m == 0) throw std::invalid_argument("relative_density: graph has no edges");
    if (m_prime <= 0 || m_prime > m)
        throw std::invalid_argument("relative_density: m' must be in [1, m]");
    return static_cast<double>(m_prime) / static_cast<double>(m);
}

std::string content_hash(const Graph& g) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto feed = [&](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xff;
            h *= 0x100000001b3ULL;
        }
    };
    feed(static_cast<std::uint64_t>(g.n));
    for (auto [u, v] : g.edges) {
        feed(static_cast<std::uint64_t>(u));
        feed(static_cast<std::uint64_t>(v));
    }
    char buf[17];
    static const char* hex = "0123456789abcdef";
    for (int i = 0; i < 16; ++i) buf[i] = hex[(h >> (60 - 4 * i)) & 0xf];
    buf[16] = '\0';
    return std::string(buf);
}

} // namespace sparsedraw
