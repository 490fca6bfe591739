#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sparsedraw/experiment.hpp"
#include "sparsedraw/genlab.hpp"
#include "sparsedraw/graph.hpp"
#include "sparsedraw/layout.hpp"
#include "sparsedraw/metrics.hpp"
#include "sparsedraw/numio.hpp"
#include "sparsedraw/shape.hpp"
#include "sparsedraw/sparsify.hpp"
#include "sparsedraw/spectral.hpp"

namespace {

using namespace sparsedraw;

std::string env_cache_dir() {
    const char* env = std::getenv("SPARSIFY_CACHE_DIR");
    return env == nullptr ? std::string{} : std::string{env};
}

Graph load_graph_auto(const std::string& path) {
    if (path.size() > 4 && path.substr(path.size() - 4) == ".mtx")
        return load_matrix_market_file(path);
    return load_edge_list_file(path);
}

/// Writes through a file when a path is given, else to stdout.
void with_output(const std::string& path, const std::function<void(std::ostream&)>& fn) {
    if (path.empty()) {
        fn(std::cout);
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    fn(out);
}

std::vector<double> parse_density_list(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(parse_double(item, "density"));
    if (out.empty()) throw std::invalid_argument("--densities needs at least one value");
    return out;
}

struct SparsifyArgs {
    std::string input, method = "re", out;
    double density = 0.1;
    std::uint64_t seed = 0;
    bool keep_lcc = false;
};

void cmd_sparsify(const SparsifyArgs& a) {
    Graph g = load_graph_auto(a.input);
    if (a.keep_lcc) g = largest_component(g);
    const SparsifyResult r =
        sparsify(g, method_from_string(a.method), a.density, a.seed, nullptr, env_cache_dir());
    with_output(a.out, [&](std::ostream& out) { save_edge_list(r.proxy, out); });
    if (!a.out.empty()) {
        std::ofstream side(a.out + ".json");
        if (!side) throw std::runtime_error("cannot open for writing: " + a.out + ".json");
        save_sparsification_sidecar(r.selection, content_hash(g), side);
    }
}

struct LayoutArgs {
    std::string input, algorithm = "fr", out, svg;
    std::uint64_t seed = 0;
    int iterations = 0;
    bool keep_lcc = false;
};

void cmd_layout(const LayoutArgs& a) {
    Graph g = load_graph_auto(a.input);
    if (a.keep_lcc) g = largest_component(g);
    const Drawing d = a.algorithm == "multilevel" ? layout_multilevel(g, a.seed)
                                                  : layout_fr(g, a.seed, a.iterations);
    with_output(a.out, [&](std::ostream& out) { save_drawing_csv(g, d, out); });
    if (!a.svg.empty()) {
        std::ofstream out(a.svg);
        if (!out) throw std::runtime_error("cannot open for writing: " + a.svg);
        render_svg(g, d.positions, out);
    }
}

struct ShapeArgs {
    std::string drawing, kind = "gg", out;
};

void cmd_shape(const ShapeArgs& a) {
    const NamedPoints np = load_drawing_csv_file(a.drawing);
    const ShapeGraph s = build_shape(shape_from_string(a.kind), np.points);
    with_output(a.out, [&](std::ostream& out) {
        out << "# shape " << to_string(s.kind) << "\n";
        for (const auto& [u, v] : s.edges) out << np.labels[u] << " " << np.labels[v] << "\n";
    });
}

struct QualityArgs {
    std::string drawing, graph, kind = "gg";
};

void cmd_quality(const QualityArgs& a) {
    const Graph g = load_graph_auto(a.graph);
    const NamedPoints np = load_drawing_csv_file(a.drawing);
    Graph proxy;
    proxy.n = static_cast<int>(np.labels.size());
    proxy.labels = np.labels;
    const double q = jaccard_quality(g, proxy, np.points, shape_from_string(a.kind));
    std::cout << fmt_double(q) << "\n";
}

struct GenerateArgs {
    std::string type = "grid", out, spec_file;
    std::vector<std::string> holes;
    int width = 2, height = 2;
    int n = 100, edges_per_step = 2;
    int periphery_size = 50, periphery_edges = 60, attachment_edges = 2;
    std::uint64_t seed = 0;
};

void cmd_generate(const GenerateArgs& a) {
    nlohmann::json spec;
    if (!a.spec_file.empty()) {
        std::ifstream in(a.spec_file);
        if (!in) throw std::runtime_error("cannot open: " + a.spec_file);
        in >> spec;
    } else if (a.type == "grid") {
        spec = {{"type", "grid"}, {"w", a.width}, {"h", a.height}};
    } else if (a.type == "scale_free") {
        spec = {{"type", "scale_free"},
                {"n", a.n},
                {"edges_per_step", a.edges_per_step},
                {"seed", a.seed}};
    } else if (a.type == "blackhole") {
        if (a.holes.empty())
            throw std::invalid_argument("blackhole needs at least one --hole SIZE:DENSITY");
        auto holes = nlohmann::json::array();
        for (const auto& h : a.holes) {
            const auto colon = h.find(':');
            if (colon == std::string::npos)
                throw std::invalid_argument("--hole expects SIZE:DENSITY, got " + h);
            holes.push_back(nlohmann::json::array(
                {static_cast<int>(parse_int(h.substr(0, colon), "hole size")),
                 parse_double(h.substr(colon + 1), "hole density")}));
        }
        spec = {{"type", "blackhole"},
                {"holes", holes},
                {"periphery_size", a.periphery_size},
                {"periphery_edges", a.periphery_edges},
                {"attachment_edges", a.attachment_edges},
                {"seed", a.seed}};
    } else {
        throw std::invalid_argument("unknown generator type: " + a.type);
    }
    const Graph g = generate_from_json(spec);
    with_output(a.out, [&](std::ostream& out) { save_edge_list(g, out); });
    if (!a.out.empty()) {
        std::ofstream manifest(a.out + ".manifest.json");
        if (!manifest)
            throw std::runtime_error("cannot open for writing: " + a.out + ".manifest.json");
        nlohmann::ordered_json m;
        m["spec"] = spec;
        m["n"] = g.n;
        m["m"] = g.num_edges();
        m["content_hash"] = content_hash(g);
        manifest << m.dump(2) << "\n";
    }
}

struct ExperimentArgs {
    std::string plan_file, out, layout, densities;
    std::vector<std::string> methods, shapes;
    int seeds = 0, iterations = -1;
    bool keep_lcc = false;
    bool quiet = false;
};

void cmd_experiment(const ExperimentArgs& a) {
    std::ifstream in(a.plan_file);
    if (!in) throw std::runtime_error("cannot open plan: " + a.plan_file);
    nlohmann::json j;
    in >> j;
    ExperimentPlan plan = plan_from_json(j);
    if (!a.out.empty()) plan.out_dir = a.out;
    if (!a.layout.empty()) plan.layout = a.layout;
    if (!a.densities.empty()) plan.densities = parse_density_list(a.densities);
    if (a.seeds > 0) plan.seeds = a.seeds;
    if (a.iterations >= 0) plan.iterations = a.iterations;
    if (a.keep_lcc) plan.keep_lcc = true;
    if (!a.methods.empty()) {
        plan.methods.clear();
        for (const auto& m : a.methods) plan.methods.push_back(method_from_string(m));
    }
    if (!a.shapes.empty()) {
        plan.shapes.clear();
        for (const auto& s : a.shapes) plan.shapes.push_back(shape_from_string(s));
    }
    std::string cache = env_cache_dir();
    if (cache.empty()) cache = plan.out_dir + "/cache";
    run_experiment_to_dir(plan, cache, a.quiet ? nullptr : &std::cerr);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral graph sparsification, layout, and proxy-quality toolkit"};
    app.require_subcommand(1);

    SparsifyArgs sparsify_args;
    auto* sp = app.add_subcommand("sparsify", "select a proxy edge set from a graph");
    sp->add_option("input", sparsify_args.input, "edge-list or .mtx file")->required();
    sp->add_option("--method", sparsify_args.method, "re, sss, or dss")
        ->check(CLI::IsMember({"re", "sss", "dss"}));
    sp->add_option("--density", sparsify_args.density, "target m'/m in (0,1]");
    sp->add_option("--seed", sparsify_args.seed, "sampling seed");
    sp->add_option("--out", sparsify_args.out, "output edge-list path (default stdout)");
    sp->add_flag("--keep-lcc", sparsify_args.keep_lcc, "reduce input to its largest component");
    sp->callback([&] { cmd_sparsify(sparsify_args); });

    LayoutArgs layout_args;
    auto* la = app.add_subcommand("layout", "compute a 2-D drawing of a graph");
    la->add_option("input", layout_args.input, "edge-list or .mtx file")->required();
    la->add_option("--layout", layout_args.algorithm, "fr or multilevel")
        ->check(CLI::IsMember({"fr", "multilevel"}));
    la->add_option("--seed", layout_args.seed, "layout seed");
    la->add_option("--iterations", layout_args.iterations, "fr iterations (0 = 4n)");
    la->add_option("--out", layout_args.out, "drawing CSV path (default stdout)");
    la->add_option("--svg", layout_args.svg, "also render the drawing to this SVG file");
    la->add_flag("--keep-lcc", layout_args.keep_lcc, "reduce input to its largest component");
    la->callback([&] { cmd_layout(layout_args); });

    ShapeArgs shape_args;
    auto* sh = app.add_subcommand("shape", "build a shape graph from a drawing");
    sh->add_option("drawing", shape_args.drawing, "drawing CSV (label,x,y)")->required();
    sh->add_option("--shape", shape_args.kind, "gg, rng, or emst")
        ->check(CLI::IsMember({"gg", "rng", "emst"}));
    sh->add_option("--out", shape_args.out, "output edge-list path (default stdout)");
    sh->callback([&] { cmd_shape(shape_args); });

    QualityArgs quality_args;
    auto* qu = app.add_subcommand("quality", "score a drawing against the original graph");
    qu->add_option("drawing", quality_args.drawing, "drawing CSV of the proxy")->required();
    qu->add_option("--graph", quality_args.graph, "original graph file")->required();
    qu->add_option("--shape", quality_args.kind, "gg, rng, or emst")
        ->check(CLI::IsMember({"gg", "rng", "emst"}));
    qu->callback([&] { cmd_quality(quality_args); });

    GenerateArgs gen_args;
    auto* ge = app.add_subcommand("generate", "emit a synthetic corpus graph");
    ge->add_option("--type", gen_args.type, "grid, scale_free, or blackhole")
        ->check(CLI::IsMember({"grid", "scale_free", "blackhole"}));
    ge->add_option("--spec", gen_args.spec_file, "JSON generator spec (overrides flags)");
    ge->add_option("--width", gen_args.width, "grid width");
    ge->add_option("--height", gen_args.height, "grid height");
    ge->add_option("--n", gen_args.n, "scale-free vertex count");
    ge->add_option("--edges-per-step", gen_args.edges_per_step, "scale-free edges per vertex");
    ge->add_option("--hole", gen_args.holes, "blackhole core as SIZE:DENSITY (repeatable)");
    ge->add_option("--periphery-size", gen_args.periphery_size, "blackhole periphery vertices");
    ge->add_option("--periphery-edges", gen_args.periphery_edges, "blackhole periphery edges");
    ge->add_option("--attachment-edges", gen_args.attachment_edges, "attachments per core");
    ge->add_option("--seed", gen_args.seed, "generator seed");
    ge->add_option("--out", gen_args.out, "output edge-list path (default stdout)");
    ge->callback([&] { cmd_generate(gen_args); });

    ExperimentArgs exp_args;
    auto* ex = app.add_subcommand("experiment", "run a full sweep from a plan file");
    ex->add_option("--plan", exp_args.plan_file, "JSON experiment plan")->required();
    ex->add_option("--out", exp_args.out, "override the plan's output directory");
    ex->add_option("--method", exp_args.methods, "override methods (repeatable)")
        ->check(CLI::IsMember({"re", "sss", "dss"}));
    ex->add_option("--densities", exp_args.densities, "override densities, comma-separated");
    ex->add_option("--seeds", exp_args.seeds, "override seeds per configuration");
    ex->add_option("--shape", exp_args.shapes, "override shape kinds (repeatable)")
        ->check(CLI::IsMember({"gg", "rng", "emst"}));
    ex->add_option("--layout", exp_args.layout, "override layout algorithm")
        ->check(CLI::IsMember({"fr", "multilevel"}));
    ex->add_option("--iterations", exp_args.iterations, "override fr iterations");
    ex->add_flag("--keep-lcc", exp_args.keep_lcc, "reduce inputs to largest components");
    ex->add_flag("--quiet", exp_args.quiet, "suppress progress output");
    ex->callback([&] { cmd_experiment(exp_args); });

    try {
        app.parse(argc, argv);
        return 0;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
