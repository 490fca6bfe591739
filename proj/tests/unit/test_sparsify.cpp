#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "helpers.hpp"
#include "sparsedraw/sparsify.hpp"

using namespace sparsedraw;
using namespace testutil;

namespace {

bool is_subset(const std::vector<Edge>& sub, const std::vector<Edge>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

} // namespace

TEST_CASE("method names round trip") {
    CHECK(method_from_string("re") == Method::RE);
    CHECK(method_from_string("sss") == Method::SSS);
    CHECK(method_from_string("dss") == Method::DSS);
    CHECK(to_string(Method::SSS) == "sss");
    CHECK_THROWS_AS(method_from_string("yolo"), std::invalid_argument);
}

TEST_CASE("sample_re draws the full edge set at m_prime = m") {
    const Graph g = random_gnm(9, 14, 1);
    for (const std::uint64_t seed : {0u, 5u, 99u}) {
        const Sparsification s = sample_re(g, g.num_edges(), seed);
        CHECK(s.selected == g.edges);
        CHECK(s.m_prime == 14);
        CHECK(s.source_m == 14);
    }
}

TEST_CASE("sample_re is deterministic per seed") {
    const Graph g = random_gnm(12, 30, 2);
    const Sparsification a = sample_re(g, 10, 42);
    const Sparsification b = sample_re(g, 10, 42);
    CHECK(a.selected == b.selected);
    CHECK(a.seed == 42);
}

TEST_CASE("sample_re rejects out-of-range m_prime") {
    const Graph g = complete_graph(3);
    CHECK_THROWS_AS(sample_re(g, 0, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_re(g, 4, 1), std::invalid_argument);
    CHECK_THROWS_AS(sample_re(make_graph(3, {}), 1, 1), std::invalid_argument);
}

TEST_CASE("sample_re is uniform over single draws") {
    const Graph g = complete_graph(3);
    std::map<Edge, int> counts;
    const int trials = 30000;
    for (int seed = 0; seed < trials; ++seed)
        counts[sample_re(g, 1, static_cast<std::uint64_t>(seed)).selected[0]]++;
    for (const auto& e : g.edges)
        CHECK(std::abs(counts[e] / static_cast<double>(trials) - 1.0 / 3.0) < 0.01);
}

TEST_CASE("sample_sss with equal resistances matches uniform sampling statistically") {
    const Graph g = cycle_graph(4); // every edge has r = 3/4
    const ResistanceTable t = effective_resistance(g);
    std::map<Edge, int> counts;
    const int trials = 30000;
    for (int seed = 0; seed < trials; ++seed)
        counts[sample_sss(g, t, 1, static_cast<std::uint64_t>(seed)).selected[0]]++;
    for (const auto& e : g.edges)
        CHECK(std::abs(counts[e] / static_cast<double>(trials) - 0.25) < 0.01);
}

TEST_CASE("sample_sss draws proportionally to resistance on the barbell") {
    const Graph g = barbell_graph();
    const ResistanceTable t = effective_resistance(g);
    std::map<Edge, int> counts;
    const int trials = 30000;
    for (int seed = 0; seed < trials; ++seed)
        counts[sample_sss(g, t, 1, static_cast<std::uint64_t>(seed)).selected[0]]++;
    // weights: bridge 1, six triangle edges 2/3 each; total 5
    CHECK(std::abs(counts[Edge{2, 3}] / static_cast<double>(trials) - 0.2) < 0.01);
    for (const auto& e : g.edges) {
        if (e == Edge{2, 3}) continue;
        CHECK(std::abs(counts[e] / static_cast<double>(trials) - 2.0 / 15.0) < 0.01);
    }
}

TEST_CASE("sample_sss exhausts the edge set and validates inputs") {
    const Graph g = random_gnm(8, 12, 3);
    const ResistanceTable t = effective_resistance(g);
    CHECK(sample_sss(g, t, 12, 7).selected == g.edges);

    ResistanceTable bad = t;
    bad.r[3] = 0.0;
    CHECK_THROWS_AS(sample_sss(g, bad, 2, 7), std::invalid_argument);
    ResistanceTable short_table = t;
    short_table.r.pop_back();
    CHECK_THROWS_AS(sample_sss(g, short_table, 2, 7), std::invalid_argument);
    CHECK_THROWS_AS(sample_sss(g, t, 0, 7), std::invalid_argument);
}

TEST_CASE("select_dss takes the bridge first on the barbell") {
    const Graph g = barbell_graph();
    const ResistanceTable t = effective_resistance(g);
    const Sparsification s = select_dss(g, t, 1);
    CHECK(s.selected == std::vector<Edge>{{2, 3}});
    CHECK(s.seed == 0);
}

TEST_CASE("select_dss breaks full ties lexicographically") {
    // every tree edge has r = 1, so selection is pure tie-breaking
    const Graph tree = random_connected(10, 0, 8);
    const ResistanceTable t = effective_resistance(tree);
    for (const int m_prime : {1, 3, 7, 9}) {
        const Sparsification s = select_dss(tree, t, m_prime);
        CHECK(s.selected ==
              std::vector<Edge>(tree.edges.begin(), tree.edges.begin() + m_prime));
    }
    CHECK(select_dss(tree, t, tree.num_edges()).selected == tree.edges);
}

TEST_CASE("select_dss is invariant across calls and ignores seeds") {
    const Graph g = random_connected(12, 10, 9);
    const ResistanceTable t = effective_resistance(g);
    const Sparsification a = select_dss(g, t, 6);
    const Sparsification b = select_dss(g, t, 6);
    CHECK(a.selected == b.selected);
    const SparsifyResult c = sparsify(g, Method::DSS, 0.4, 1);
    const SparsifyResult d = sparsify(g, Method::DSS, 0.4, 999);
    CHECK(c.selection.selected == d.selection.selected);
}

TEST_CASE("select_dss always keeps every bridge when it can") {
    for (const std::uint64_t seed : {11u, 13u, 17u, 19u}) {
        // chain of dense blobs: bridges appear between consecutive blobs
        std::vector<Edge> edges;
        const int blob = 5, blobs = 3;
        std::mt19937_64 rng(seed);
        for (int b = 0; b < blobs; ++b) {
            const int base = b * blob;
            for (int u = 0; u < blob; ++u)
                for (int v = u + 1; v < blob; ++v)
                    if (uniform01(rng) < 0.8) edges.push_back({base + u, base + v});
            for (int v = 1; v < blob; ++v) edges.push_back({base, base + v});
            if (b > 0) edges.push_back({base - 1, base});
        }
        const Graph g = make_graph(blob * blobs, edges);
        const std::vector<Edge> want = bridges(g);
        REQUIRE(want.size() >= 2);
        const ResistanceTable t = effective_resistance(g);
        const Sparsification s =
            select_dss(g, t, static_cast<int>(want.size()) + 3);
        for (const auto& e : want)
            CHECK(std::find(s.selected.begin(), s.selected.end(), e) != s.selected.end());
    }
}

TEST_CASE("sparsify computes m_prime from density") {
    const Graph g = random_gnm(40, 576, 4);
    REQUIRE(g.num_edges() == 576);
    CHECK(sparsify(g, Method::DSS, 0.03, 0).selection.m_prime == 17);
    CHECK(sparsify(g, Method::RE, 0.000001, 0).selection.m_prime == 1);
    CHECK(sparsify(g, Method::RE, 1.0, 0).selection.m_prime == 576);
    CHECK_THROWS_AS(sparsify(g, Method::RE, 0.0, 0), std::invalid_argument);
    CHECK_THROWS_AS(sparsify(g, Method::RE, 1.5, 0), std::invalid_argument);
    CHECK_THROWS_AS(sparsify(make_graph(2, {}), Method::RE, 0.5, 0), std::invalid_argument);
}

TEST_CASE("sparsify at density one reproduces the graph without isolated vertices") {
    const Graph g = make_graph(5, {{0, 1}, {1, 2}, {2, 3}}); // vertex 4 isolated
    for (const Method m : {Method::RE, Method::SSS, Method::DSS}) {
        const SparsifyResult r = sparsify(g, m, 1.0, 3);
        CHECK(r.proxy.n == 4);
        CHECK(label_edges(r.proxy) == label_edges(g));
    }
}

TEST_CASE("selection size and containment across randomized configurations") {
    const Method methods[] = {Method::RE, Method::SSS, Method::DSS};
    std::mt19937_64 rng(12345);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = 6 + static_cast<int>(uniform_below(rng, 10));
        const int max_extra = n * (n - 1) / 2 - (n - 1);
        const int extra = std::min(static_cast<int>(uniform_below(rng, 12)), max_extra);
        const Graph g = random_connected(n, extra, rng());
        const double density = 0.05 + 0.95 * uniform01(rng);
        const Method method = methods[uniform_below(rng, 3)];
        const SparsifyResult r = sparsify(g, method, density, rng());
        const int want = std::max(1, static_cast<int>(std::lround(density * g.num_edges())));
        CHECK(static_cast<int>(r.selection.selected.size()) == want);
        CHECK(std::is_sorted(r.selection.selected.begin(), r.selection.selected.end()));
        CHECK(is_subset(r.selection.selected, g.edges));
        CHECK(r.proxy.num_edges() == want);
        // labels survive the induced subgraph
        for (const auto& lbl : r.proxy.labels) {
            bool found = false;
            for (int v = 0; v < g.n && !found; ++v) found = g.label(v) == lbl;
            CHECK(found);
        }
    }
}

TEST_CASE("stochastic methods vary across seeds") {
    const Graph g = random_gnm(10, 20, 5);
    const ResistanceTable t = effective_resistance(g);
    std::set<std::vector<Edge>> re_sel, sss_sel;
    for (int seed = 0; seed < 1000; ++seed) {
        re_sel.insert(sample_re(g, 10, static_cast<std::uint64_t>(seed)).selected);
        sss_sel.insert(sample_sss(g, t, 10, static_cast<std::uint64_t>(seed)).selected);
    }
    CHECK(re_sel.size() >= 2);
    CHECK(sss_sel.size() >= 2);
}

TEST_CASE("sparsify accepts a precomputed resistance table") {
    const Graph g = random_connected(9, 6, 31);
    const ResistanceTable t = effective_resistance(g);
    const SparsifyResult with = sparsify(g, Method::DSS, 0.5, 0, &t);
    const SparsifyResult without = sparsify(g, Method::DSS, 0.5, 0);
    CHECK(with.selection.selected == without.selection.selected);
}

TEST_CASE("sidecar json carries the provenance fields") {
    Sparsification s;
    s.method = Method::SSS;
    s.m_prime = 7;
    s.seed = 424242;
    std::ostringstream out;
    save_sparsification_sidecar(s, "deadbeef", out);
    const auto j = nlohmann::json::parse(out.str());
    CHECK(j.at("method") == "sss");
    CHECK(j.at("m_prime") == 7);
    CHECK(j.at("seed") == 424242);
    CHECK(j.at("source_hash") == "deadbeef");
}
