#pragma once

#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "satq/reduction.hpp"
#include "satq/retrieval.hpp"

namespace satq {

enum class Method { sa, tabu, ga_ls, bsb };

std::string method_name(Method m);
Method method_from_name(const std::string& name);

struct SolverParams {
    Method method = Method::ga_ls;
    std::string name;       // row label; defaults to the method name
    uint64_t seed = 0;
    long long iteration_budget = 0; // 0 -> per-method default, see default_budget()
    std::optional<double> time_budget_ms;

    // simulated annealing: geometric cooling t *= ratio per proposal;
    // when no ratio is given it is derived so the schedule ends at t_final.
    double sa_t_initial = 8.0;
    double sa_t_final = 0.05;
    std::optional<double> sa_cooling_ratio;

    // tabu search
    int tabu_tenure = 0; // 0 -> min(50, 10 + n/10)
    bool tabu_aspiration = true;

    // genetic algorithm with local search
    int ga_population = 20;
    double ga_crossover_rate = 0.9;
    double ga_mutation_rate = -1.0; // < 0 -> 1/n
    int ga_elitism = 2;

    // ballistic simulated bifurcation
    double bsb_dt = 1.0;
    long long bsb_steps = 0; // 0 -> iteration_budget (default 5000)
    double bsb_a0 = 1.0;
    std::optional<double> bsb_c0; // default 0.5 / (sqrt(n) * rms(J))
};

long long default_budget(Method m);

/// Named presets: "default-sa", "default-tabu", "default-ga", "default-bsb",
/// and "paper-bsb" (large-step bifurcation: dt=20, 5000 steps; see README).
SolverParams preset(const std::string& name);
std::vector<std::string> preset_names();

SolverParams params_from_json(const nlohmann::json& j);
nlohmann::json params_to_json(const SolverParams& p);

struct SolveReport {
    Method method = Method::ga_ls;
    std::string method_label;
    uint64_t seed = 0;
    long long iterations_used = 0;
    double wall_time_ms = 0.0;
    Assignment best_bits;
    double objective = 0.0; // q(best); for bsb, 2 * ising energy (same scale)

    // Filled by attach_max2sat_results():
    int max2sat_violated = -1;
    DirectCounts oracle;
    RetrievalResult retrieval;
    bool retrieval_feasible = false;
    bool retrieval_agrees = false;
};

/// wall_time_ms is excluded when include_timing is false (reproducible output).
nlohmann::json report_to_json(const SolveReport& r, bool include_timing = true);

/// Optional per-improvement callback (iteration, best objective so far).
using BestCallback = std::function<void(long long, double)>;

SolveReport solve_simulated_annealing(const QuboModel& m, const SolverParams& p,
                                      const BestCallback& on_best = nullptr);
SolveReport solve_tabu(const QuboModel& m, const SolverParams& p,
                       const BestCallback& on_best = nullptr);
SolveReport solve_ga_local_search(const QuboModel& m, const SolverParams& p,
                                  const BestCallback& on_best = nullptr);
SolveReport solve_bsb(const IsingModel& m, const SolverParams& p);

/// Evaluate the solved bits against the converted formula: V(x), the
/// direct-count oracle, and Diophantine retrieval. When an ancillary is not
/// per-group optimal (three true literals with d=0) the retrieval stays
/// feasible but can miss the oracle counts; the report flags the mismatch.
void attach_max2sat_results(SolveReport& r, const Max2SatFormula& g);

/// Convert, build the model the method needs, solve, attach retrieval.
SolveReport run_solver(const Max2SatFormula& g, const SolverParams& p);

} // namespace satq
