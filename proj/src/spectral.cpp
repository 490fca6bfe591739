#include "sparsedraw/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sparsedraw/numio.hpp"

namespace sparsedraw {

namespace {
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kRankToleranceFactor = 1e-9;
} // namespace

Spectrum eigendecompose(const DenseMatrix& L) {
    if (L.rows() != L.cols()) throw std::invalid_argument("eigendecompose: matrix not square");
    const double scale = std::max(1.0, L.cwiseAbs().maxCoeff());
    if ((L - L.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale)
        throw std::invalid_argument("eigendecompose: matrix not symmetric");
    Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(L);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigendecompose: solver failed to converge");
    return Spectrum{solver.eigenvalues(), solver.eigenvectors()};
}

DenseMatrix pseudoinverse(const DenseMatrix& L, double* rank_tolerance_out) {
    const Spectrum s = eigendecompose(L);
    const int n = static_cast<int>(s.values.size());
    const double lambda_max = n > 0 ? s.values(n - 1) : 0.0;
    const double tau = kRankToleranceFactor * std::max(lambda_max, 0.0);
    if (rank_tolerance_out) *rank_tolerance_out = tau;

    Eigen::VectorXd inv = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (s.values(i) > tau) inv(i) = 1.0 / s.values(i);
    DenseMatrix p = s.vectors * inv.asDiagonal() * s.vectors.transpose();
    return ((p + p.transpose()) * 0.5).eval();
}

DenseMatrix pseudoinverse(const DenseMatrix& L) { return pseudoinverse(L, nullptr); }

double pair_resistance(const DenseMatrix& pinv, int u, int v) {
    return pinv(u, u) + pinv(v, v) - 2.0 * pinv(u, v);
}

ResistanceTable effective_resistance(const Graph& g) {
    ResistanceTable table;
    double tau = 0.0;
    const DenseMatrix pinv = pseudoinverse(laplacian(g), &tau);
    table.rank_tolerance = tau;
    table.r.resize(g.edges.size());
    // Independent per-edge evaluation; values land by index, so the result is
    // identical no matter how the loop is scheduled.
    for (size_t i = 0; i < g.edges.size(); ++i) {
        auto [u, v] = g.edges[i];
        table.r[i] = pair_resistance(pinv, u, v);
    }
    return table;
}

double commute_distance(const Graph& g, int u, int v) {
    if (u < 0 || u >= g.n || v < 0 || v >= g.n)
        throw std::invalid_argument("commute_distance: vertex out of range");
    const auto comp = connected_components(g);
    if (comp.label[u] != comp.label[v])
        throw std::invalid_argument("commute_distance: vertices in different components");
    if (u == v) return 0.0;
    const DenseMatrix pinv = pseudoinverse(laplacian(g));
    return 2.0 * static_cast<double>(g.num_edges()) * pair_resistance(pinv, u, v);
}

EpsilonReport spectral_epsilon(const Graph& g, const Graph& sub) {
    if (g.n != sub.n)
        throw std::invalid_argument("spectral_epsilon: vertex sets differ");
    for (auto e : sub.edges)
        if (!g.has_edge(e))
            throw std::invalid_argument("spectral_epsilon: subgraph edge not in graph");

    EpsilonReport report;
    const int cg = connected_components(g).count;
    const int cs = connected_components(sub).count;
    if (cs > cg) {
        report.null_space_mismatch = true;
        return report;
    }
    if (sub.edges == g.edges) {
        report.epsilon = 0.0;
        return report;
    }

    // Equal component counts with sub's partition refining g's means the two
    // null spaces coincide; the complement is spanned by sub's eigenvectors
    // with eigenvalue above the rank cutoff.
    const Spectrum ss = eigendecompose(laplacian(sub));
    const int n = g.n;
    const double tau = kRankToleranceFactor * std::max(ss.values(n - 1), 0.0);
    int k = 0;
    for (int i = 0; i < n; ++i)
        if (ss.values(i) > tau) ++k;
    if (k == 0) {
        // sub is edgeless; g must be too (else components would mismatch)
        report.epsilon = 0.0;
        return report;
    }
    Eigen::MatrixXd basis(n, k);
    Eigen::VectorXd sub_eigs(k);
    for (int i = 0, j = 0; i < n; ++i) {
        if (ss.values(i) > tau) {
            basis.col(j) = ss.vectors.col(i);
            sub_eigs(j) = ss.values(i);
            ++j;
        }
    }
    const DenseMatrix projected_g = basis.transpose() * laplacian(g) * basis;
    const DenseMatrix projected_sub = sub_eigs.asDiagonal();
    Eigen::GeneralizedSelfAdjointEigenSolver<DenseMatrix> gen(
        ((projected_g + projected_g.transpose()) * 0.5).eval(), projected_sub);
    if (gen.info() != Eigen::Success)
        throw std::runtime_error("spectral_epsilon: generalized solver failed");
    const double lo = gen.eigenvalues().minCoeff();
    const double hi = gen.eigenvalues().maxCoeff();
    report.epsilon = std::max({hi - 1.0, 1.0 - lo, 0.0});
    return report;
}

void save_resistance_csv(const Graph& g, const ResistanceTable& t, std::ostream& out) {
    if (t.r.size() != g.edges.size())
        throw std::invalid_argument("resistance table not aligned with graph edges");
    out << "# rank_tolerance " << fmt_double(t.rank_tolerance) << '\n';
    out << "u,v,r\n";
    for (size_t i = 0; i < g.edges.size(); ++i)
        out << g.edges[i].first << ',' << g.edges[i].second << ',' << fmt_double(t.r[i]) << '\n';
}

ResistanceTable load_resistance_csv(const Graph& g, std::istream& in) {
    ResistanceTable table;
    std::string line;
    size_t next = 0;
    while (std::getline(in, line)) {
        if (line.rfind("# rank_tolerance ", 0) == 0) {
            table.rank_tolerance = parse_double(line.substr(17), "rank_tolerance");
            continue;
        }
        if (line.empty() || line[0] == '#' || line == "u,v,r") continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("resistance csv: malformed row '" + line + "'");
        const int u = static_cast<int>(parse_int(std::string_view(line).substr(0, c1), "u"));
        const int v =
            static_cast<int>(parse_int(std::string_view(line).substr(c1 + 1, c2 - c1 - 1), "v"));
        const double r = parse_double(std::string_view(line).substr(c2 + 1), "r");
        if (next >= g.edges.size() || g.edges[next] != make_edge(u, v))
            throw std::runtime_error("resistance csv does not match the graph's edge list");
        table.r.push_back(r);
        ++next;
    }
    if (next != g.edges.size())
        throw std::runtime_error("resistance csv does not match the graph's edge list");
    return table;
}

ResistanceTable cached_effective_resistance(const Graph& g, const std::string& cache_dir) {
    if (cache_dir.empty()) return effective_resistance(g);
    namespace fs = std::filesystem;
    const fs::path path = fs::path(cache_dir) / (content_hash(g) + ".resistance.csv");
    if (fs::exists(path)) {
        std::ifstream in(path);
        if (in) {
            try {
                return load_resistance_csv(g, in);
            } catch (const std::exception&) {
                // stale or foreign file under our key: recompute below
            }
        }
    }
    ResistanceTable table = effective_resistance(g);
    std::error_code ec;
    fs::create_directories(fs::path(cache_dir), ec);
    std::ofstream out(path);
    if (out) save_resistance_csv(g, table, out);
    return table;
}

} // namespace sparsedraw
