#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "satq/solvers.hpp"

namespace satq {

/// Random-instance grid: one point per rho (m = llround(rho * n)) or per
/// explicit clause count in m_grid.
struct GeneratorSpec {
    int n = 30;
    std::vector<double> rho_grid;
    std::vector<int> m_grid;
    int instances_per_point = 10;
    uint64_t seed = 1;
};

struct SampleSpec {
    int count = 0;
    uint64_t seed = 0;
};

struct ExperimentSpec {
    std::string name;       // set label for summaries; defaults from the source
    std::string source_dir; // directory of .cnf files, or
    std::optional<GeneratorSpec> generator;
    std::vector<SolverParams> solvers;
    int trials_per_instance = 3;
    std::optional<SampleSpec> sample; // subset a directory source
    int workers = 1;
};

ExperimentSpec experiment_from_json(const nlohmann::json& j);

struct ResultRow {
    std::string instance;
    int n_vars = 0;
    int n_clauses = 0;
    double density = 0.0;
    std::string solver;
    int trial = 0;
    uint64_t seed = 0;
    int max2sat_violated = 0;
    int original_violated = 0;
    double objective = 0.0;
    long long iterations = 0;
    double wall_ms = 0.0;
};

/// Linear-interpolation percentile: sort ascending, r = (p/100)(n-1),
/// interpolate between floor(r) and ceil(r).
double percentile_linear(std::vector<double> values, double p);

/// One row per (instance, solver, trial), sorted by that key. Per-trial
/// seeds derive from splitmix64(solver seed ^ fnv1a(instance id) ^ trial+1)
/// so results do not depend on job scheduling or sampling order.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

struct SweepRow {
    double density = 0.0;
    std::string solver;
    double mean_best = 0.0;
    double median_best = 0.0;
};

/// Generator-sourced experiment plus one aggregate row per (grid point,
/// solver): mean and median over instances of the per-instance best
/// original violated count.
std::vector<SweepRow> density_sweep(const ExperimentSpec& spec,
                                    std::vector<ResultRow>* rows_out = nullptr);

struct Stats {
    double min = 0, max = 0, q1 = 0, q3 = 0, median = 0;
};

/// set -> solver -> five-number stats of per-instance bests.
using SummaryStats = std::map<std::string, std::map<std::string, Stats>>;

SummaryStats summarize(const std::string& set_name, const std::vector<ResultRow>& rows);
nlohmann::json summary_to_json(const SummaryStats& s);

/// Per-(instance, solver) minimum of original_violated over trials.
std::map<std::pair<std::string, std::string>, int>
per_instance_best(const std::vector<ResultRow>& rows);

/// CSV with the fixed header
/// instance,n_vars,n_clauses,density,solver,trial,seed,max2sat_violated,original_violated,objective,iterations,wall_ms
void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

/// Reference import (external solver results): CSV "instance,violated".
std::map<std::string, int> read_reference_csv(std::istream& in);

struct ReferenceComparison {
    struct Row {
        std::string instance;
        std::string solver;
        int best = 0;
        int reference = 0;
    };
    std::vector<Row> matched;
    std::vector<std::string> missing_in_reference; // instances we solved, absent from the CSV
    std::vector<std::string> missing_in_results;   // CSV ids we never solved
};

ReferenceComparison compare_with_reference(const std::vector<ResultRow>& rows,
                                           const std::map<std::string, int>& reference);

} // namespace satq
