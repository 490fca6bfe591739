#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sparsedraw/graph.hpp"
#include "sparsedraw/metrics.hpp"
#include "sparsedraw/shape.hpp"
#include "sparsedraw/sparsify.hpp"

namespace sparsedraw {

struct PlanGraph {
    std::string name;
    std::string klass;          // grouping key for class-averaged plots
    std::string path;           // edge-list (or .mtx) file when non-empty
    nlohmann::json generator;   // generator spec otherwise
};

/// Declarative experiment description. Densities ascending in (0,1];
/// seeds >= 1.
struct ExperimentPlan {
    std::vector<PlanGraph> graphs;
    std::vector<Method> methods{Method::RE, Method::SSS, Method::DSS};
    std::vector<double> densities;
    int seeds = 5;
    std::vector<ShapeKind> shapes{ShapeKind::GG};
    std::string layout = "fr";
    int iterations = 0; // 0 selects the layout default
    bool keep_lcc = false;
    std::uint64_t base_seed = 0;
    std::string out_dir = "results";

    ExperimentPlan();
    void validate() const;
};

/// {0.01, 0.02, 0.03, 0.04, 0.05, 0.10, 0.15, 0.20, ..., 1.00}
std::vector<double> default_densities();

ExperimentPlan plan_from_json(const nlohmann::json& j);
nlohmann::json plan_to_json(const ExperimentPlan& plan);

struct ResultRow {
    std::string graph;
    Method method = Method::RE;
    double density = 0.0;
    int seed = 0; // seed index within the plan
    ShapeKind shape = ShapeKind::GG;
    std::string layout;
    std::optional<double> q;
    std::optional<Ratio> ratio; // engaged only on rows carrying a ratio cell
    std::string error;
};

struct TimingRow {
    std::string graph;
    std::string method;
    std::string density;
    std::string seed;
    std::string stage;
    double seconds = 0.0;
};

struct ExperimentResult {
    std::vector<ResultRow> rows;
    std::vector<TimingRow> timings;
    bool has_ratio_column = false;
};

/// Full factorial sweep in canonical plan order; per-row failures are recorded
/// in the error column and the run continues. Resistance tables are computed
/// once per graph (through the cache when cache_dir is non-empty).
ExperimentResult run_experiment(const ExperimentPlan& plan, const std::string& cache_dir = {},
                                std::ostream* log = nullptr);

void write_results_csv(const ExperimentResult& r, std::ostream& out);
void write_summary_csv(const ExperimentResult& r, std::ostream& out);

/// results.csv, summary.csv, timings.csv, resolved_plan.json and SVG plots
/// under plan.out_dir. Wall-clock lives only in timings.csv; everything else
/// is a pure function of the plan and inputs.
void run_experiment_to_dir(const ExperimentPlan& plan, const std::string& cache_dir = {},
                           std::ostream* log = nullptr);

} // namespace sparsedraw
