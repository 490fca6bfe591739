#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "helpers.hpp"
#include "sparsedraw/spectral.hpp"

using namespace sparsedraw;
using namespace testutil;

namespace {

// Independent epsilon oracle: congruence by the pseudoinverse square root of
// the subgraph Laplacian, using Eigen directly. The nonzero eigenvalues of
// S^{+1/2} L S^{+1/2} are the generalized Rayleigh-quotient extrema on the
// shared complement.
double epsilon_oracle(const Graph& g, const Graph& sub) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(laplacian(sub));
    const Eigen::VectorXd vals = es.eigenvalues();
    const int n = static_cast<int>(vals.size());
    const double tau = 1e-9 * std::max(vals(n - 1), 0.0);
    Eigen::VectorXd half = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i)
        if (vals(i) > tau) half(i) = 1.0 / std::sqrt(vals(i));
    const DenseMatrix b = es.eigenvectors() * half.asDiagonal() * es.eigenvectors().transpose();
    const DenseMatrix m = b * laplacian(g) * b;
    Eigen::SelfAdjointEigenSolver<DenseMatrix> ms(((m + m.transpose()) * 0.5).eval());
    const double cutoff = 1e-9 * std::max(1.0, ms.eigenvalues()(n - 1));
    double lo = 0.0, hi = 0.0;
    bool any = false;
    for (int i = 0; i < n; ++i) {
        const double v = ms.eigenvalues()(i);
        if (v <= cutoff) continue;
        if (!any) lo = v;
        hi = v;
        any = true;
    }
    if (!any) return 0.0;
    return std::max({hi - 1.0, 1.0 - lo, 0.0});
}

double edge_quadratic(const Graph& g, const Eigen::VectorXd& x) {
    double s = 0.0;
    for (const auto& [u, v] : g.edges) s += (x(u) - x(v)) * (x(u) - x(v));
    return s;
}

} // namespace

TEST_CASE("eigendecompose small closed forms") {
    const Spectrum k3 = eigendecompose(laplacian(complete_graph(3)));
    CHECK(std::abs(k3.values(0)) < 1e-9);
    CHECK(k3.values(1) == doctest::Approx(3.0));
    CHECK(k3.values(2) == doctest::Approx(3.0));

    const Spectrum p3 = eigendecompose(laplacian(path_graph(3)));
    CHECK(std::abs(p3.values(0)) < 1e-9);
    CHECK(p3.values(1) == doctest::Approx(1.0));
    CHECK(p3.values(2) == doctest::Approx(3.0));

    const Spectrum zero = eigendecompose(DenseMatrix::Zero(2, 2));
    CHECK(zero.values(0) == 0.0);
    CHECK(zero.values(1) == 0.0);
}

TEST_CASE("eigendecompose rejects non-symmetric input") {
    DenseMatrix a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(eigendecompose(a), std::invalid_argument);
    CHECK_THROWS_AS(eigendecompose(DenseMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("eigendecompose returns an orthonormal reconstruction") {
    for (const std::uint64_t seed : {31u, 32u, 33u}) {
        const Graph g = random_gnm(12, 25, seed);
        const DenseMatrix L = laplacian(g);
        const Spectrum s = eigendecompose(L);
        const DenseMatrix eye = s.vectors.transpose() * s.vectors;
        CHECK((eye - DenseMatrix::Identity(g.n, g.n)).cwiseAbs().maxCoeff() < 1e-6);
        const DenseMatrix rebuilt =
            s.vectors * s.values.asDiagonal() * s.vectors.transpose();
        CHECK((rebuilt - L).cwiseAbs().maxCoeff() < 1e-6 * std::max(1.0, L.cwiseAbs().maxCoeff()));
        for (int i = 1; i < g.n; ++i) CHECK(s.values(i) >= s.values(i - 1));
        CHECK(s.values(0) >= -1e-9);
    }
}

TEST_CASE("every eigenpair satisfies the edge quadratic form") {
    for (const std::uint64_t seed : {41u, 42u, 43u, 44u}) {
        const Graph g = random_gnm(30, 80, seed);
        const Spectrum s = eigendecompose(laplacian(g));
        for (int i = 0; i < g.n; ++i)
            CHECK(edge_quadratic(g, s.vectors.col(i)) ==
                  doctest::Approx(s.values(i)).epsilon(1e-6).scale(1.0));
    }
}

TEST_CASE("pseudoinverse small closed forms") {
    DenseMatrix edge(2, 2);
    edge << 1, -1, -1, 1;
    const DenseMatrix pe = pseudoinverse(edge);
    CHECK((pe - 0.25 * edge).cwiseAbs().maxCoeff() < 1e-12);

    DenseMatrix diag = DenseMatrix::Zero(2, 2);
    diag(0, 0) = 2.0;
    diag(1, 1) = 5.0;
    const DenseMatrix pd = pseudoinverse(diag);
    CHECK(pd(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(pd(1, 1) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::abs(pd(0, 1)) < 1e-12);

    const DenseMatrix pk3 = pseudoinverse(laplacian(complete_graph(3)));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(pk3(i, j) == doctest::Approx(i == j ? 2.0 / 9.0 : -1.0 / 9.0).epsilon(1e-9));
}

TEST_CASE("pseudoinverse agrees with the SVD oracle and Moore-Penrose identities") {
    for (const std::uint64_t seed : {51u, 52u, 53u}) {
        const Graph g = random_gnm(14, 30, seed);
        const DenseMatrix L = laplacian(g);
        const DenseMatrix p = pseudoinverse(L);
        CHECK((p - svd_pinv(L)).cwiseAbs().maxCoeff() < 1e-8);
        CHECK((L * p * L - L).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((p * L * p - p).cwiseAbs().maxCoeff() < 1e-6);
        CHECK((p - p.transpose()).cwiseAbs().maxCoeff() < 1e-9);
        const DenseMatrix lp = L * p;
        CHECK((lp - lp.transpose()).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("effective resistance closed forms") {
    const ResistanceTable k3 = effective_resistance(complete_graph(3));
    for (const double r : k3.r) CHECK(r == doctest::Approx(2.0 / 3.0).epsilon(1e-9));

    for (const Graph& tree : {star_graph(5), path_graph(6), random_connected(9, 0, 3)}) {
        const ResistanceTable t = effective_resistance(tree);
        for (const double r : t.r) CHECK(r == doctest::Approx(1.0).epsilon(1e-9));
    }

    const ResistanceTable c4 = effective_resistance(cycle_graph(4));
    for (const double r : c4.r) CHECK(r == doctest::Approx(0.75).epsilon(1e-9));

    const Graph barbell = barbell_graph();
    const ResistanceTable b = effective_resistance(barbell);
    for (std::size_t i = 0; i < barbell.edges.size(); ++i) {
        const double want = barbell.edges[i] == Edge{2, 3} ? 1.0 : 2.0 / 3.0;
        CHECK(b.r[i] == doctest::Approx(want).epsilon(1e-9));
    }
}

TEST_CASE("resistance values lie in (0, 1]") {
    for (const std::uint64_t seed : {61u, 62u, 63u}) {
        const Graph g = random_gnm(16, 40, seed);
        for (const double r : effective_resistance(g).r) {
            CHECK(r > 0.0);
            CHECK(r <= 1.0 + 1e-9);
        }
    }
}

TEST_CASE("Foster identity per connected component") {
    const auto foster = [](const Graph& g) {
        const ResistanceTable t = effective_resistance(g);
        double sum = 0.0;
        for (const double r : t.r) sum += r;
        return sum;
    };
    for (const std::uint64_t seed : {71u, 72u}) {
        const Graph g = random_connected(25, 40, seed);
        CHECK(foster(g) == doctest::Approx(24.0).epsilon(1e-6));
    }
    // disconnected: sum is n minus the component count
    const Graph two = make_graph(9, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {5, 6},
                                     {6, 3}, {7, 8}});
    CHECK(foster(two) == doctest::Approx(9.0 - 3.0).epsilon(1e-6));
}

TEST_CASE("component count equals the multiplicity of eigenvalue zero") {
    for (const std::uint64_t seed : {81u, 82u, 83u}) {
        const Graph g = random_gnm(18, 20, seed);
        const Spectrum s = eigendecompose(laplacian(g));
        int zeros = 0;
        for (int i = 0; i < g.n; ++i)
            if (std::abs(s.values(i)) < 1e-6) ++zeros;
        CHECK(zeros == connected_components(g).count);
    }
}

TEST_CASE("pair_resistance covers non-edges") {
    const DenseMatrix p = pseudoinverse(laplacian(path_graph(3)));
    CHECK(pair_resistance(p, 0, 2) == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("commute distance closed forms") {
    CHECK(commute_distance(make_graph(2, {{0, 1}}), 0, 1) == doctest::Approx(2.0));
    CHECK(commute_distance(complete_graph(3), 0, 2) == doctest::Approx(4.0));
    CHECK(commute_distance(path_graph(3), 0, 2) == doctest::Approx(8.0));
    CHECK(commute_distance(path_graph(3), 1, 1) == 0.0);
    CHECK_THROWS_AS(commute_distance(make_graph(4, {{0, 1}, {2, 3}}), 0, 3),
                    std::invalid_argument);
    CHECK_THROWS_AS(commute_distance(path_graph(3), 0, 5), std::invalid_argument);
}

TEST_CASE("simulated random walks reproduce commute distance") {
    const auto simulate = [](const Graph& g, int a, int b, int walks, std::uint64_t seed) {
        const auto adj = g.adjacency();
        std::mt19937_64 rng(seed);
        double total = 0.0;
        for (int w = 0; w < walks; ++w) {
            int at = a;
            long long steps = 0;
            bool reached = false;
            while (!(reached && at == a)) {
                at = adj[at][uniform_below(rng, adj[at].size())];
                ++steps;
                if (at == b) reached = true;
            }
            total += static_cast<double>(steps);
        }
        return total / walks;
    };
    const struct {
        Graph g;
        int a, b;
    } cases[] = {{make_graph(2, {{0, 1}}), 0, 1},
                 {path_graph(3), 0, 2},
                 {complete_graph(4), 0, 3},
                 {star_graph(3), 1, 2}};
    for (const auto& c : cases) {
        const double expected = commute_distance(c.g, c.a, c.b);
        const double observed = simulate(c.g, c.a, c.b, 200000, 99);
        CHECK(std::abs(observed - expected) / expected < 0.05);
    }
}

TEST_CASE("adding a parallel path never increases resistance") {
    // explicit series-parallel ladder: 1, then 1 || 2, then 1 || 2 || 2
    Graph g = make_graph(2, {{0, 1}});
    auto r01 = [](const Graph& h) {
        return pair_resistance(pseudoinverse(laplacian(h)), 0, 1);
    };
    CHECK(r01(g) == doctest::Approx(1.0));
    g = make_graph(3, {{0, 1}, {0, 2}, {1, 2}});
    CHECK(r01(g) == doctest::Approx(2.0 / 3.0));
    g = make_graph(4, {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {1, 3}});
    CHECK(r01(g) == doctest::Approx(0.5));

    // randomized monotonicity: route one extra two-edge path around any edge
    for (const std::uint64_t seed : {91u, 92u, 93u, 94u, 95u}) {
        const Graph base = random_connected(5, 3, seed);
        for (const auto& [u, v] : base.edges) {
            const double before = pair_resistance(pseudoinverse(laplacian(base)), u, v);
            std::vector<Edge> edges = base.edges;
            edges.push_back({u, 5});
            edges.push_back({v, 5});
            const Graph grown = make_graph(6, edges);
            const double after = pair_resistance(pseudoinverse(laplacian(grown)), u, v);
            CHECK(after <= before + 1e-12);
        }
    }
}

TEST_CASE("spectral epsilon of a graph against itself is zero") {
    for (const Graph& g :
         {path_graph(4), complete_graph(5), random_connected(10, 8, 7), make_graph(4, {{0, 1}, {2, 3}})}) {
        const EpsilonReport rep = spectral_epsilon(g, g);
        REQUIRE(rep.epsilon.has_value());
        CHECK(*rep.epsilon == 0.0);
        CHECK_FALSE(rep.null_space_mismatch);
    }
}

TEST_CASE("spectral epsilon matches the congruence oracle") {
    const Graph c4 = cycle_graph(4);
    const Graph p4 = subgraph_same_vertices(c4, {{0, 1}, {1, 2}, {2, 3}});
    const EpsilonReport rep = spectral_epsilon(c4, p4);
    REQUIRE(rep.epsilon.has_value());
    CHECK(*rep.epsilon == doctest::Approx(epsilon_oracle(c4, p4)).epsilon(1e-6));
    CHECK(*rep.epsilon > 0.0);

    for (const std::uint64_t seed : {101u, 102u, 103u, 104u}) {
        const Graph g = random_connected(11, 14, seed);
        // spanning connected subgraph: a tree plus a few survivors
        const std::vector<Edge> tree_edges = [&] {
            std::vector<Edge> keep = bridges(g);
            std::set<Edge> chosen(keep.begin(), keep.end());
            Graph probe = make_graph(g.n, std::vector<Edge>(chosen.begin(), chosen.end()));
            for (const auto& e : g.edges) {
                if (connected_components(probe).count == 1) break;
                std::set<Edge> trial = chosen;
                trial.insert(e);
                const Graph t = make_graph(g.n, std::vector<Edge>(trial.begin(), trial.end()));
                if (connected_components(t).count < connected_components(probe).count) {
                    chosen = trial;
                    probe = t;
                }
            }
            return std::vector<Edge>(chosen.begin(), chosen.end());
        }();
        const Graph sub = subgraph_same_vertices(g, tree_edges);
        REQUIRE(connected_components(sub).count == 1);
        const EpsilonReport r = spectral_epsilon(g, sub);
        REQUIRE(r.epsilon.has_value());
        CHECK(*r.epsilon == doctest::Approx(epsilon_oracle(g, sub)).epsilon(1e-6));
        CHECK(*r.epsilon >= 0.0);
    }
}

TEST_CASE("spectral epsilon flags a null-space mismatch") {
    const Graph barbell = barbell_graph();
    std::vector<Edge> no_bridge;
    for (const auto& e : barbell.edges)
        if (e != Edge{2, 3}) no_bridge.push_back(e);
    const EpsilonReport rep =
        spectral_epsilon(barbell, subgraph_same_vertices(barbell, no_bridge));
    CHECK(rep.null_space_mismatch);
    CHECK_FALSE(rep.epsilon.has_value());
}

TEST_CASE("spectral epsilon validates its inputs") {
    CHECK_THROWS_AS(spectral_epsilon(path_graph(3), path_graph(4)), std::invalid_argument);
    CHECK_THROWS_AS(spectral_epsilon(path_graph(3), make_graph(3, {{0, 2}})),
                    std::invalid_argument);
}

TEST_CASE("resistance csv round trip") {
    const Graph g = random_connected(8, 6, 17);
    const ResistanceTable t = effective_resistance(g);
    std::ostringstream out;
    save_resistance_csv(g, t, out);
    std::istringstream in(out.str());
    const ResistanceTable back = load_resistance_csv(g, in);
    CHECK(back.r == t.r); // shortest round-trip formatting is exact
    CHECK(back.rank_tolerance == t.rank_tolerance);

    const Graph other = path_graph(8);
    std::istringstream in2(out.str());
    CHECK_THROWS_AS(load_resistance_csv(other, in2), std::runtime_error);
}

TEST_CASE("resistance cache stores and reuses") {
    TempDir tmp("rescache");
    const Graph g = random_connected(10, 9, 23);
    const ResistanceTable first = cached_effective_resistance(g, tmp.str());
    const auto cache_file = tmp.path / (content_hash(g) + ".resistance.csv");
    CHECK(std::filesystem::exists(cache_file));
    const ResistanceTable second = cached_effective_resistance(g, tmp.str());
    CHECK(second.r == first.r);

    // corrupt cache entries are recomputed, not trusted
    { std::ofstream(cache_file) << "garbage\n"; }
    const ResistanceTable third = cached_effective_resistance(g, tmp.str());
    for (std::size_t i = 0; i < first.r.size(); ++i)
        CHECK(third.r[i] == doctest::Approx(first.r[i]).epsilon(1e-12));
}
