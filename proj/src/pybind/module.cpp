#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sparsedraw/experiment.hpp"
#include "sparsedraw/genlab.hpp"
#include "sparsedraw/graph.hpp"
#include "sparsedraw/layout.hpp"
#include "sparsedraw/metrics.hpp"
#include "sparsedraw/shape.hpp"
#include "sparsedraw/sparsify.hpp"
#include "sparsedraw/spectral.hpp"

namespace py = pybind11;
using namespace sparsedraw;

namespace {

std::vector<Vec2> to_points(const Eigen::Ref<const Eigen::MatrixXd>& m) {
    if (m.cols() != 2) throw std::invalid_argument("points must be an (n, 2) array");
    std::vector<Vec2> pts(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) pts[static_cast<std::size_t>(i)] = {m(i, 0), m(i, 1)};
    return pts;
}

Eigen::MatrixXd from_points(const std::vector<Vec2>& pts) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 2);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        m(static_cast<Eigen::Index>(i), 0) = pts[i].x;
        m(static_cast<Eigen::Index>(i), 1) = pts[i].y;
    }
    return m;
}

} // namespace

PYBIND11_MODULE(_sparsedraw, m) {
    m.doc() = "spectral graph sparsification, layout, and proxy-quality toolkit";

    py::class_<Graph>(m, "Graph")
        .def(py::init([](int n, const std::vector<Edge>& edges,
                         const std::vector<std::string>& labels) {
                 return make_graph(n, edges, labels);
             }),
             py::arg("n"), py::arg("edges"), py::arg("labels") = std::vector<std::string>{})
        .def_readonly("n", &Graph::n)
        .def_readonly("edges", &Graph::edges)
        .def_readonly("labels", &Graph::labels)
        .def("num_edges", &Graph::num_edges)
        .def("label", &Graph::label, py::arg("v"))
        .def("degrees", &Graph::degrees)
        .def("__repr__", [](const Graph& g) {
            return "Graph(n=" + std::to_string(g.n) +
                   ", m=" + std::to_string(g.num_edges()) + ")";
        });

    m.def("load_edge_list", &load_edge_list_file, py::arg("path"));
    m.def("load_matrix_market", &load_matrix_market_file, py::arg("path"));
    m.def("save_edge_list", &save_edge_list_file, py::arg("graph"), py::arg("path"));
    m.def("content_hash", &content_hash, py::arg("graph"));
    m.def("largest_component", &largest_component, py::arg("graph"));
    m.def(
        "connected_components",
        [](const Graph& g) {
            const Components c = connected_components(g);
            return py::make_tuple(c.count, c.label);
        },
        py::arg("graph"));
    m.def("relative_density", &relative_density, py::arg("graph"), py::arg("m_prime"));

    m.def("laplacian", &laplacian, py::arg("graph"));
    m.def(
        "pseudoinverse", [](const Eigen::MatrixXd& mat) { return pseudoinverse(mat); },
        py::arg("matrix"));
    m.def(
        "effective_resistance",
        [](const Graph& g) {
            const ResistanceTable t = effective_resistance(g);
            return t.r;
        },
        py::arg("graph"));
    m.def("commute_distance", &commute_distance, py::arg("graph"), py::arg("u"), py::arg("v"));
    m.def(
        "spectral_epsilon",
        [](const Graph& g, const Graph& sub) -> std::optional<double> {
            const EpsilonReport rep = spectral_epsilon(g, sub);
            if (rep.null_space_mismatch) return std::nullopt;
            return rep.epsilon;
        },
        py::arg("graph"), py::arg("subgraph"),
        "epsilon of the spectral approximation, or None when the subgraph adds "
        "null-space directions");

    m.def(
        "sparsify",
        [](const Graph& g, const std::string& method, double density, std::uint64_t seed) {
            const SparsifyResult r = sparsify(g, method_from_string(method), density, seed);
            return py::make_tuple(r.proxy, r.selection.selected);
        },
        py::arg("graph"), py::arg("method"), py::arg("density"), py::arg("seed") = 0,
        "returns (proxy graph, selected edges of the input)");

    m.def(
        "layout_fr",
        [](const Graph& g, std::uint64_t seed, int iterations) {
            return from_points(layout_fr(g, seed, iterations).positions);
        },
        py::arg("graph"), py::arg("seed") = 0, py::arg("iterations") = 0);
    m.def(
        "layout_multilevel",
        [](const Graph& g, std::uint64_t seed) {
            return from_points(layout_multilevel(g, seed).positions);
        },
        py::arg("graph"), py::arg("seed") = 0);

    m.def(
        "gabriel",
        [](const Eigen::Ref<const Eigen::MatrixXd>& pts) { return gabriel(to_points(pts)).edges; },
        py::arg("points"));
    m.def(
        "rng",
        [](const Eigen::Ref<const Eigen::MatrixXd>& pts) { return rng(to_points(pts)).edges; },
        py::arg("points"));
    m.def(
        "emst",
        [](const Eigen::Ref<const Eigen::MatrixXd>& pts) { return emst(to_points(pts)).edges; },
        py::arg("points"));

    m.def(
        "jaccard_quality",
        [](const Graph& original, const Graph& proxy,
           const Eigen::Ref<const Eigen::MatrixXd>& pts, const std::string& shape) {
            return jaccard_quality(original, proxy, to_points(pts), shape_from_string(shape));
        },
        py::arg("original"), py::arg("proxy"), py::arg("positions"), py::arg("shape") = "gg");
    m.def(
        "quality_ratio",
        [](double q_method, double q_re) -> std::optional<double> {
            const Ratio r = quality_ratio(q_method, q_re);
            if (!r.defined) return std::nullopt;
            return r.value;
        },
        py::arg("q_method"), py::arg("q_re"), "None when the baseline quality is zero");

    m.def("generate_grid", &generate_grid, py::arg("w"), py::arg("h"));
    m.def("generate_scale_free", &generate_scale_free, py::arg("n"), py::arg("edges_per_step"),
          py::arg("seed") = 0);
    m.def(
        "generate_blackhole",
        [](const std::vector<std::pair<int, double>>& holes, int periphery_size,
           int periphery_edges, int attachment_edges, std::uint64_t seed) {
            BlackHoleSpec spec;
            for (const auto& [size, density] : holes) spec.holes.push_back({size, density});
            spec.periphery_size = periphery_size;
            spec.periphery_edges = periphery_edges;
            spec.attachment_edges = attachment_edges;
            spec.seed = seed;
            return generate_blackhole(spec);
        },
        py::arg("holes"), py::arg("periphery_size"), py::arg("periphery_edges"),
        py::arg("attachment_edges") = 1, py::arg("seed") = 0,
        "holes is a list of (core_size, core_density) pairs");
}
