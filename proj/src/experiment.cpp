#include "sparsedraw/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "sparsedraw/genlab.hpp"
#include "sparsedraw/layout.hpp"
#include "sparsedraw/numio.hpp"
#include "sparsedraw/random.hpp"
#include "sparsedraw/spectral.hpp"

namespace sparsedraw {

std::vector<double> default_densities() {
    std::vector<double> d;
    for (const int p : {1, 2, 3, 4, 5}) d.push_back(p / 100.0);
    for (int p = 10; p <= 100; p += 5) d.push_back(p / 100.0);
    return d;
}

ExperimentPlan::ExperimentPlan() : densities(default_densities()) {}

void ExperimentPlan::validate() const {
    if (graphs.empty()) throw std::invalid_argument("plan has no graphs");
    if (methods.empty()) throw std::invalid_argument("plan has no methods");
    if (shapes.empty()) throw std::invalid_argument("plan has no shape kinds");
    if (densities.empty()) throw std::invalid_argument("plan has no densities");
    for (std::size_t i = 0; i < densities.size(); ++i) {
        if (!(densities[i] > 0.0) || densities[i] > 1.0)
            throw std::invalid_argument("densities must lie in (0, 1]");
        if (i > 0 && densities[i] <= densities[i - 1])
            throw std::invalid_argument("densities must be strictly ascending");
    }
    if (seeds < 1) throw std::invalid_argument("seeds must be >= 1");
    if (layout != "fr" && layout != "multilevel")
        throw std::invalid_argument("layout must be fr or multilevel");
    if (iterations < 0) throw std::invalid_argument("iterations must be >= 0");
    for (const auto& g : graphs) {
        if (g.name.empty()) throw std::invalid_argument("every plan graph needs a name");
        if (g.path.empty() && g.generator.is_null())
            throw std::invalid_argument("graph " + g.name + " has neither path nor generator");
    }
}

ExperimentPlan plan_from_json(const nlohmann::json& j) {
    ExperimentPlan plan;
    int auto_name = 0;
    for (const auto& jg : j.at("graphs")) {
        PlanGraph pg;
        if (jg.is_string()) {
            pg.path = jg.get<std::string>();
        } else {
            pg.path = jg.value("path", std::string{});
            pg.name = jg.value("name", std::string{});
            pg.klass = jg.value("class", std::string{});
            if (jg.contains("generator")) pg.generator = jg.at("generator");
        }
        if (pg.name.empty()) {
            pg.name = pg.path.empty()
                          ? "g" + std::to_string(auto_name)
                          : std::filesystem::path(pg.path).stem().string();
        }
        if (pg.klass.empty()) pg.klass = pg.name;
        ++auto_name;
        plan.graphs.push_back(std::move(pg));
    }
    if (j.contains("methods")) {
        plan.methods.clear();
        for (const auto& m : j.at("methods"))
            plan.methods.push_back(method_from_string(m.get<std::string>()));
    }
    if (j.contains("densities")) {
        plan.densities.clear();
        for (const auto& d : j.at("densities")) plan.densities.push_back(d.get<double>());
    }
    if (j.contains("shapes")) {
        plan.shapes.clear();
        for (const auto& s : j.at("shapes"))
            plan.shapes.push_back(shape_from_string(s.get<std::string>()));
    }
    plan.seeds = j.value("seeds", plan.seeds);
    plan.layout = j.value("layout", plan.layout);
    plan.iterations = j.value("iterations", plan.iterations);
    plan.keep_lcc = j.value("keep_lcc", plan.keep_lcc);
    plan.base_seed = j.value("base_seed", plan.base_seed);
    plan.out_dir = j.value("out", plan.out_dir);
    return plan;
}

nlohmann::json plan_to_json(const ExperimentPlan& plan) {
    nlohmann::ordered_json j;
    auto graphs = nlohmann::ordered_json::array();
    for (const auto& g : plan.graphs) {
        nlohmann::ordered_json jg;
        jg["name"] = g.name;
        jg["class"] = g.klass;
        if (!g.path.empty()) jg["path"] = g.path;
        if (!g.generator.is_null()) jg["generator"] = g.generator;
        graphs.push_back(jg);
    }
    j["graphs"] = graphs;
    auto methods = nlohmann::ordered_json::array();
    for (const auto m : plan.methods) methods.push_back(to_string(m));
    j["methods"] = methods;
    j["densities"] = plan.densities;
    j["seeds"] = plan.seeds;
    auto shapes = nlohmann::ordered_json::array();
    for (const auto s : plan.shapes) shapes.push_back(to_string(s));
    j["shapes"] = shapes;
    j["layout"] = plan.layout;
    j["iterations"] = plan.iterations;
    j["keep_lcc"] = plan.keep_lcc;
    j["base_seed"] = plan.base_seed;
    j["out"] = plan.out_dir;
    return j;
}

namespace {

Graph load_plan_graph(const PlanGraph& pg) {
    if (!pg.path.empty()) {
        if (pg.path.size() > 4 && pg.path.substr(pg.path.size() - 4) == ".mtx")
            return load_matrix_market_file(pg.path);
        return load_edge_list_file(pg.path);
    }
    return generate_from_json(pg.generator);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string csv_safe(std::string s) {
    for (auto& c : s)
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    return s;
}

using GroupKey = std::tuple<std::string, std::string, std::string, std::string>;

struct GroupStats {
    std::vector<double> qs;
    double mean() const {
        double s = 0.0;
        for (const double q : qs) s += q;
        return qs.empty() ? 0.0 : s / static_cast<double>(qs.size());
    }
    double stddev() const {
        if (qs.size() < 2) return 0.0;
        const double m = mean();
        double s = 0.0;
        for (const double q : qs) s += (q - m) * (q - m);
        return std::sqrt(s / static_cast<double>(qs.size() - 1));
    }
};

std::map<GroupKey, GroupStats> group_rows(const ExperimentResult& r) {
    std::map<GroupKey, GroupStats> groups;
    for (const auto& row : r.rows) {
        if (!row.q.has_value()) continue;
        groups[{row.graph, to_string(row.method), fmt_double(row.density),
                to_string(row.shape)}]
            .qs.push_back(*row.q);
    }
    return groups;
}

} // namespace

ExperimentResult run_experiment(const ExperimentPlan& plan, const std::string& cache_dir,
                                std::ostream* log) {
    plan.validate();
    ExperimentResult res;
    bool has_re = false, has_spectral = false;
    for (const auto m : plan.methods) (m == Method::RE ? has_re : has_spectral) = true;
    res.has_ratio_column = has_re && has_spectral;

    for (std::size_t gi = 0; gi < plan.graphs.size(); ++gi) {
        const auto& pg = plan.graphs[gi];
        Graph g;
        std::string graph_error;
        try {
            g = load_plan_graph(pg);
            if (plan.keep_lcc) g = largest_component(g);
        } catch (const std::exception& e) {
            graph_error = e.what();
        }
        ResistanceTable table;
        bool table_ready = false;
        std::string table_error;
        if (graph_error.empty() && has_spectral) {
            const auto t0 = std::chrono::steady_clock::now();
            try {
                table = cache_dir.empty() ? effective_resistance(g)
                                          : cached_effective_resistance(g, cache_dir);
                table_ready = true;
            } catch (const std::exception& e) {
                table_error = e.what();
            }
            res.timings.push_back({pg.name, "", "", "", "resistance", seconds_since(t0)});
        }
        if (log)
            *log << pg.name << ": n=" << (graph_error.empty() ? g.n : 0)
                 << " m=" << (graph_error.empty() ? g.num_edges() : 0)
                 << (graph_error.empty() ? "" : " load error: " + graph_error) << "\n";

        for (std::size_t mi = 0; mi < plan.methods.size(); ++mi) {
            const Method method = plan.methods[mi];
            for (std::size_t di = 0; di < plan.densities.size(); ++di) {
                const double density = plan.densities[di];
                for (int s = 0; s < plan.seeds; ++s) {
                    const std::uint64_t key =
                        ((gi * 1000003ULL + mi) * 1000003ULL + di) * 1000003ULL +
                        static_cast<std::uint64_t>(s);
                    const std::uint64_t sample_seed = mix_seed(plan.base_seed, key);
                    const std::uint64_t layout_seed = mix_seed(sample_seed, 0x4c41594f5554ULL);

                    const auto emit_failed = [&](const std::string& why) {
                        for (const auto shape : plan.shapes) {
                            ResultRow row;
                            row.graph = pg.name;
                            row.method = method;
                            row.density = density;
                            row.seed = s;
                            row.shape = shape;
                            row.layout = plan.layout;
                            row.error = why;
                            res.rows.push_back(std::move(row));
                        }
                    };
                    if (!graph_error.empty()) {
                        emit_failed(graph_error);
                        continue;
                    }
                    if (method != Method::RE && !table_ready) {
                        emit_failed(table_error.empty() ? "no resistance table" : table_error);
                        continue;
                    }
                    try {
                        auto t0 = std::chrono::steady_clock::now();
                        const SparsifyResult sp =
                            sparsify(g, method, density, sample_seed,
                                     method == Method::RE ? nullptr : &table);
                        res.timings.push_back({pg.name, to_string(method), fmt_double(density),
                                               std::to_string(s), "sparsify",
                                               seconds_since(t0)});
                        t0 = std::chrono::steady_clock::now();
                        const Drawing drawing =
                            plan.layout == "fr"
                                ? layout_fr(sp.proxy, layout_seed, plan.iterations)
                                : layout_multilevel(sp.proxy, layout_seed);
                        res.timings.push_back({pg.name, to_string(method), fmt_double(density),
                                               std::to_string(s), "layout",
                                               seconds_since(t0)});
                        for (const auto shape : plan.shapes) {
                            ResultRow row;
                            row.graph = pg.name;
                            row.method = method;
                            row.density = density;
                            row.seed = s;
                            row.shape = shape;
                            row.layout = plan.layout;
                            try {
                                t0 = std::chrono::steady_clock::now();
                                const ShapeGraph sg = build_shape(shape, drawing.positions);
                                res.timings.push_back({pg.name, to_string(method),
                                                       fmt_double(density), std::to_string(s),
                                                       "shape", seconds_since(t0)});
                                t0 = std::chrono::steady_clock::now();
                                row.q = jaccard_quality_against_shape(g, sp.proxy, sg).q;
                                res.timings.push_back({pg.name, to_string(method),
                                                       fmt_double(density), std::to_string(s),
                                                       "quality", seconds_since(t0)});
                            } catch (const std::exception& e) {
                                row.error = e.what();
                            }
                            res.rows.push_back(std::move(row));
                        }
                    } catch (const std::exception& e) {
                        emit_failed(e.what());
                    }
                }
            }
        }
    }

    if (res.has_ratio_column) {
        // RE baseline mean per (graph, density, shape), successful rows only
        std::map<GroupKey, GroupStats> base;
        for (const auto& row : res.rows)
            if (row.method == Method::RE && row.q.has_value())
                base[{row.graph, "", fmt_double(row.density), to_string(row.shape)}]
                    .qs.push_back(*row.q);
        for (auto& row : res.rows) {
            if (row.method == Method::RE || !row.q.has_value()) continue;
            const auto it =
                base.find({row.graph, "", fmt_double(row.density), to_string(row.shape)});
            if (it == base.end() || it->second.qs.empty())
                row.ratio = Ratio{}; // no baseline: undefined
            else
                row.ratio = quality_ratio(*row.q, it->second.mean());
        }
    }
    return res;
}

void write_results_csv(const ExperimentResult& r, std::ostream& out) {
    out << "graph,method,density,seed,shape,layout,Q"
        << (r.has_ratio_column ? ",ratio" : "") << ",error\n";
    for (const auto& row : r.rows) {
        out << row.graph << "," << to_string(row.method) << "," << fmt_double(row.density)
            << "," << row.seed << "," << to_string(row.shape) << "," << row.layout << ",";
        if (row.q.has_value()) out << fmt_double(*row.q);
        if (r.has_ratio_column) {
            out << ",";
            if (row.ratio.has_value())
                out << (row.ratio->defined ? fmt_double(row.ratio->value) : "undefined");
        }
        out << "," << csv_safe(row.error) << "\n";
    }
}

void write_summary_csv(const ExperimentResult& r, std::ostream& out) {
    const auto groups = group_rows(r);
    std::map<GroupKey, double> base_mean;
    for (const auto& [key, stats] : groups)
        if (std::get<1>(key) == to_string(Method::RE))
            base_mean[{std::get<0>(key), "", std::get<2>(key), std::get<3>(key)}] =
                stats.mean();
    out << "graph,method,density,shape,seeds_ok,mean_q,stddev_q"
        << (r.has_ratio_column ? ",ratio" : "") << "\n";
    for (const auto& [key, stats] : groups) {
        out << std::get<0>(key) << "," << std::get<1>(key) << "," << std::get<2>(key) << ","
            << std::get<3>(key) << "," << stats.qs.size() << "," << fmt_double(stats.mean())
            << "," << fmt_double(stats.stddev());
        if (r.has_ratio_column) {
            out << ",";
            if (std::get<1>(key) != to_string(Method::RE)) {
                const auto it = base_mean.find(
                    {std::get<0>(key), "", std::get<2>(key), std::get<3>(key)});
                if (it == base_mean.end() || it->second == 0.0)
                    out << "undefined";
                else
                    out << fmt_double(stats.mean() / it->second);
            }
        }
        out << "\n";
    }
}

namespace {

struct PlotSeries {
    std::string name;
    std::string color;
    std::vector<std::pair<double, double>> pts;
};

std::string tick_label(double v) { return fmt_double(std::round(v * 1000.0) / 1000.0); }

void svg_plot(std::ostream& out, const std::string& title, const std::string& ylabel,
              const std::vector<PlotSeries>& series, double y_max_hint) {
    const double x0 = 70, x1 = 610, y0 = 400, y1 = 40; // y axis points up
    double y_max = y_max_hint;
    if (y_max <= 0.0) {
        for (const auto& s : series)
            for (const auto& [x, y] : s.pts) y_max = std::max(y_max, y);
        y_max = y_max <= 0.0 ? 1.0 : 1.05 * y_max;
    }
    const auto px = [&](double d) { return x0 + d * (x1 - x0); };
    const auto py = [&](double q) { return y0 - (q / y_max) * (y0 - y1); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 660 460\" "
           "font-family=\"sans-serif\" font-size=\"13\">\n";
    out << "<rect x=\"0\" y=\"0\" width=\"660\" height=\"460\" fill=\"#fff\"/>\n";
    out << "<text x=\"330\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << title
        << "</text>\n";
    out << "<text x=\"14\" y=\"34\">" << ylabel << "</text>\n";
    out << "<text x=\"330\" y=\"445\" text-anchor=\"middle\">density</text>\n";
    out << "<g stroke=\"#889\" stroke-width=\"1\">\n";
    for (int i = 0; i <= 5; ++i) {
        const double gx = px(i / 5.0);
        const double gy = py(y_max * i / 5.0);
        out << "<line x1=\"" << fmt_double(gx) << "\" y1=\"" << fmt_double(y0) << "\" x2=\""
            << fmt_double(gx) << "\" y2=\"" << fmt_double(y1) << "\" stroke-opacity=\"0.3\"/>\n";
        out << "<line x1=\"" << fmt_double(x0) << "\" y1=\"" << fmt_double(gy) << "\" x2=\""
            << fmt_double(x1) << "\" y2=\"" << fmt_double(gy) << "\" stroke-opacity=\"0.3\"/>\n";
    }
    out << "</g>\n<g fill=\"#334\">\n";
    for (int i = 0; i <= 5; ++i) {
        out << "<text x=\"" << fmt_double(px(i / 5.0)) << "\" y=\"418\" text-anchor=\"middle\">"
            << tick_label(i / 5.0) << "</text>\n";
        out << "<text x=\"62\" y=\"" << fmt_double(py(y_max * i / 5.0) + 4)
            << "\" text-anchor=\"end\">" << tick_label(y_max * i / 5.0) << "</text>\n";
    }
    out << "</g>\n";
    int legend_y = 52;
    for (const auto& s : series) {
        out << "<g fill=\"none\" stroke=\"" << s.color << "\" stroke-width=\"2\">\n";
        std::string poly;
        for (const auto& [x, y] : s.pts) {
            poly += poly.empty() ? "" : " ";
            poly += fmt_double(px(x)) + "," + fmt_double(py(y));
        }
        if (!poly.empty()) out << "<polyline points=\"" << poly << "\"/>\n";
        out << "</g>\n<g fill=\"" << s.color << "\">\n";
        for (const auto& [x, y] : s.pts)
            out << "<circle cx=\"" << fmt_double(px(x)) << "\" cy=\"" << fmt_double(py(y))
                << "\" r=\"3\"/>\n";
        out << "<text x=\"600\" y=\"" << legend_y << "\" text-anchor=\"end\">" << s.name
            << "</text>\n</g>\n";
        legend_y += 18;
    }
    out << "</svg>\n";
}

std::string slug(const std::string& s) {
    std::string out;
    for (const char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) != 0) ? c : '_';
    return out;
}

std::string series_color(Method m) {
    switch (m) {
        case Method::RE: return "#778";
        case Method::SSS: return "#2a7d4f";
        case Method::DSS: return "#c0392b";
    }
    return "#000";
}

void write_plots(const ExperimentPlan& plan, const ExperimentResult& r,
                 const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    const auto groups = group_rows(r);
    const auto mean_of = [&](const std::string& graph, Method m, double density,
                             ShapeKind shape) -> std::optional<double> {
        const auto it =
            groups.find({graph, to_string(m), fmt_double(density), to_string(shape)});
        if (it == groups.end() || it->second.qs.empty()) return std::nullopt;
        return it->second.mean();
    };

    // per (class, shape): unweighted mean over member graphs of per-graph means
    std::vector<std::pair<std::string, std::vector<std::string>>> classes;
    for (const auto& pg : plan.graphs) {
        auto it = std::find_if(classes.begin(), classes.end(),
                               [&](const auto& c) { return c.first == pg.klass; });
        if (it == classes.end())
            classes.push_back({pg.klass, {pg.name}});
        else
            it->second.push_back(pg.name);
    }

    const auto emit = [&](const std::string& stem, const std::string& title,
                          const std::vector<std::string>& members, ShapeKind shape) {
        std::vector<PlotSeries> quality;
        for (const Method m : plan.methods) {
            PlotSeries s{to_string(m), series_color(m), {}};
            for (const double d : plan.densities) {
                double acc = 0.0;
                int n = 0;
                for (const auto& g : members)
                    if (const auto q = mean_of(g, m, d, shape)) {
                        acc += *q;
                        ++n;
                    }
                if (n > 0) s.pts.push_back({d, acc / n});
            }
            quality.push_back(std::move(s));
        }
        std::ofstream qs(dir / ("quality_" + stem + ".svg"));
        svg_plot(qs, title + " (" + to_string(shape) + ")", "Q", quality, 1.0);
        if (!r.has_ratio_column) return;
        std::vector<PlotSeries> ratios;
        const auto* re_series = &quality[0];
        for (std::size_t i = 0; i < plan.methods.size(); ++i)
            if (plan.methods[i] == Method::RE) re_series = &quality[i];
        for (std::size_t i = 0; i < plan.methods.size(); ++i) {
            if (plan.methods[i] == Method::RE) continue;
            PlotSeries s{quality[i].name + "/re", quality[i].color, {}};
            for (const auto& [d, q] : quality[i].pts)
                for (const auto& [rd, rq] : re_series->pts)
                    if (rd == d && rq > 0.0) s.pts.push_back({d, q / rq});
            ratios.push_back(std::move(s));
        }
        std::ofstream rs(dir / ("ratio_" + stem + ".svg"));
        svg_plot(rs, title + " ratio vs re (" + to_string(shape) + ")", "ratio", ratios, 0.0);
    };

    for (const auto& pg : plan.graphs)
        for (const ShapeKind shape : plan.shapes)
            emit(slug(pg.name) + "_" + to_string(shape), pg.name, {pg.name}, shape);
    for (const auto& [klass, members] : classes)
        if (members.size() > 1)
            for (const ShapeKind shape : plan.shapes)
                emit("class_" + slug(klass) + "_" + to_string(shape), "class " + klass,
                     members, shape);
}

} // namespace

void run_experiment_to_dir(const ExperimentPlan& plan, const std::string& cache_dir,
                           std::ostream* log) {
    plan.validate();
    const std::filesystem::path dir(plan.out_dir);
    std::filesystem::create_directories(dir);
    const ExperimentResult res = run_experiment(plan, cache_dir, log);
    {
        std::ofstream out(dir / "resolved_plan.json");
        out << plan_to_json(plan).dump(2) << "\n";
    }
    {
        std::ofstream out(dir / "results.csv");
        write_results_csv(res, out);
    }
    {
        std::ofstream out(dir / "summary.csv");
        write_summary_csv(res, out);
    }
    {
        std::ofstream out(dir / "timings.csv");
        out << "graph,method,density,seed,stage,seconds\n";
        for (const auto& t : res.timings)
            out << t.graph << "," << t.method << "," << t.density << "," << t.seed << ","
                << t.stage << "," << fmt_double(t.seconds) << "\n";
    }
    write_plots(plan, res, dir / "plots");
}

} // namespace sparsedraw
