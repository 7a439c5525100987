#include "satq/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "satq/rng.hpp"

namespace satq {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Deadline {
    std::optional<double> limit_ms;
    Clock::time_point start;
    bool hit() const { return limit_ms && elapsed_ms(start) >= *limit_ms; }
};

void check_rate(double r, const char* what) {
    if (!(r >= 0.0 && r <= 1.0))
        throw InvalidParam(std::string(what) + " must be in [0, 1]");
}

long long resolve_budget(const SolverParams& p) {
    const long long budget =
        p.iteration_budget > 0 ? p.iteration_budget : default_budget(p.method);
    if (budget <= 0)
        throw InvalidParam("iteration budget must be positive");
    return budget;
}

// Incremental single-flip state over a QUBO model.
//   sum[i] = b_i + sum_j Q_ij x_j,   delta of flipping i = (1-2x_i) * sum[i].
struct FlipState {
    const QuboModel& m;
    Assignment x;
    std::vector<double> sum;
    double objective;

    FlipState(const QuboModel& model, Assignment bits)
        : m(model), x(std::move(bits)), sum(model.b) {
        double quad = 0.0, lin = 0.0;
        for (int i = 0; i < m.n; ++i) {
            if (!x[i])
                continue;
            lin += m.b[i];
            for (const auto& [j, q] : m.adj[i]) {
                sum[j] += q;
                if (x[j])
                    quad += q;
            }
        }
        objective = 0.5 * quad + lin + m.c;
    }

    double delta(int i) const { return (1.0 - 2.0 * x[i]) * sum[i]; }

    void flip(int i) {
        objective += delta(i);
        x[i] ^= 1;
        const double s = x[i] ? 1.0 : -1.0;
        for (const auto& [j, q] : m.adj[i])
            sum[j] += s * q;
    }
};

Assignment random_bits(int n, Rng& rng) {
    Assignment x(n);
    for (int i = 0; i < n; ++i)
        x[i] = rng.coin() ? 1 : 0;
    return x;
}

SolveReport make_report(const SolverParams& p) {
    SolveReport r;
    r.method = p.method;
    r.method_label = p.name.empty() ? method_name(p.method) : p.name;
    r.seed = p.seed;
    return r;
}

// Steepest-descent to a 1-flip local optimum. Strictly improving moves only,
// lowest index wins ties. Consumes at least one budget unit per call so a
// plateau cannot stall the caller. Returns budget units consumed.
long long descend(FlipState& st, long long budget_left) {
    long long used = 0;
    while (used < budget_left) {
        int best_i = -1;
        double best_d = 0.0;
        for (int i = 0; i < st.m.n; ++i) {
            const double d = st.delta(i);
            if (d < best_d) {
                best_d = d;
                best_i = i;
            }
        }
        if (best_i < 0)
            break;
        st.flip(best_i);
        ++used;
    }
    return std::max(used, 1LL);
}

} // namespace

std::string method_name(Method m) {
    switch (m) {
    case Method::sa: return "sa";
    case Method::tabu: return "tabu";
    case Method::ga_ls: return "ga_ls";
    case Method::bsb: return "bsb";
    }
    return "?";
}

Method method_from_name(const std::string& name) {
    if (name == "sa") return Method::sa;
    if (name == "tabu") return Method::tabu;
    if (name == "ga_ls" || name == "ga") return Method::ga_ls;
    if (name == "bsb") return Method::bsb;
    throw InvalidParam("unknown method `" + name + "` (expected sa, tabu, ga_ls or bsb)");
}

long long default_budget(Method m) {
    switch (m) {
    case Method::sa: return 100000;   // proposed flips
    case Method::tabu: return 10000;  // applied moves
    case Method::ga_ls: return 100000; // applied local-search flips
    case Method::bsb: return 5000;    // integration steps
    }
    return 0;
}

SolveReport solve_simulated_annealing(const QuboModel& m, const SolverParams& p,
                                      const BestCallback& on_best) {
    const long long budget = resolve_budget(p);
    if (!(p.sa_t_initial >= p.sa_t_final && p.sa_t_final > 0.0))
        throw InvalidParam("need t_initial >= t_final > 0");
    if (p.sa_cooling_ratio && !(*p.sa_cooling_ratio > 0.0 && *p.sa_cooling_ratio <= 1.0))
        throw InvalidParam("cooling ratio must be in (0, 1]");

    SolveReport r = make_report(p);
    const Deadline deadline{p.time_budget_ms, Clock::now()};
    Rng rng(p.seed);

    FlipState st(m, random_bits(m.n, rng));
    r.best_bits = st.x;
    double best = st.objective;

    const double ratio =
        p.sa_cooling_ratio
            ? *p.sa_cooling_ratio
            : (budget > 1 ? std::pow(p.sa_t_final / p.sa_t_initial,
                                     1.0 / static_cast<double>(budget - 1))
                          : 1.0);
    double t = p.sa_t_initial;
    long long k = 0;
    if (m.n > 0) {
        for (; k < budget; ++k) {
            const int i = static_cast<int>(rng.bounded(static_cast<uint64_t>(m.n)));
            const double d = st.delta(i);
            if (d <= 0.0 || rng.unit() < std::exp(-d / t)) {
                st.flip(i);
                if (st.objective < best) {
                    best = st.objective;
                    r.best_bits = st.x;
                    if (on_best)
                        on_best(k + 1, best);
                }
            }
            t *= ratio;
            if ((k & 1023) == 0 && deadline.hit()) {
                ++k;
                break;
            }
        }
    }
    r.iterations_used = k;
    r.objective = best;
    r.wall_time_ms = elapsed_ms(deadline.start);
    return r;
}

SolveReport solve_tabu(const QuboModel& m, const SolverParams& p,
                       const BestCallback& on_best) {
    const long long budget = resolve_budget(p);
    if (p.tabu_tenure < 0)
        throw InvalidParam("tabu tenure must be non-negative");
    const long long tenure =
        p.tabu_tenure > 0 ? p.tabu_tenure : std::min<long long>(50, 10 + m.n / 10);

    SolveReport r = make_report(p);
    const Deadline deadline{p.time_budget_ms, Clock::now()};
    Rng rng(p.seed);

    FlipState st(m, random_bits(m.n, rng));
    r.best_bits = st.x;
    double best = st.objective;

    std::vector<long long> tabu_until(m.n, 0);
    long long k = 0;
    if (m.n > 0) {
        for (; k < budget; ++k) {
            int move = -1, fallback = -1;
            double move_d = std::numeric_limits<double>::infinity();
            double fallback_d = std::numeric_limits<double>::infinity();
            for (int i = 0; i < m.n; ++i) {
                const double d = st.delta(i);
                if (d < fallback_d) {
                    fallback_d = d;
                    fallback = i;
                }
                const bool tabu = tabu_until[i] > k;
                const bool aspirated =
                    p.tabu_aspiration && st.objective + d < best;
                if (tabu && !aspirated)
                    continue;
                if (d < move_d) {
                    move_d = d;
                    move = i;
                }
            }
            if (move < 0)
                move = fallback; // everything tabu, nothing aspirates
            st.flip(move);
            tabu_until[move] = k + 1 + tenure;
            if (st.objective < best) {
                best = st.objective;
                r.best_bits = st.x;
                if (on_best)
                    on_best(k + 1, best);
            }
            if (deadline.hit()) {
                ++k;
                break;
            }
        }
    }
    r.iterations_used = k;
    r.objective = best;
    r.wall_time_ms = elapsed_ms(deadline.start);
    return r;
}

SolveReport solve_ga_local_search(const QuboModel& m, const SolverParams& p,
                                  const BestCallback& on_best) {
    const long long budget = resolve_budget(p);
    if (p.ga_population < 2)
        throw InvalidParam("population must be at least 2");
    check_rate(p.ga_crossover_rate, "crossover rate");
    const double mut = p.ga_mutation_rate < 0.0
                           ? (m.n > 0 ? 1.0 / m.n : 0.0)
                           : p.ga_mutation_rate;
    check_rate(mut, "mutation rate");
    if (p.ga_elitism < 0 || p.ga_elitism >= p.ga_population)
        throw InvalidParam("elitism count must be in [0, population)");

    SolveReport r = make_report(p);
    const Deadline deadline{p.time_budget_ms, Clock::now()};
    Rng rng(p.seed);

    struct Individual {
        Assignment bits;
        double objective;
    };
    const int pop_size = p.ga_population;
    std::vector<Individual> pop;
    pop.reserve(pop_size);

    double best = std::numeric_limits<double>::infinity();
    long long used = 0;

    auto improve = [&](Assignment bits) {
        FlipState st(m, std::move(bits));
        used += descend(st, budget - used);
        if (st.objective < best) {
            best = st.objective;
            r.best_bits = st.x;
            if (on_best)
                on_best(used, best);
        }
        return Individual{std::move(st.x), st.objective};
    };

    for (int i = 0; i < pop_size && used < budget; ++i)
        pop.push_back(improve(random_bits(m.n, rng)));
    if (pop.empty())
        pop.push_back(improve(random_bits(m.n, rng)));

    auto tournament = [&]() -> const Individual& {
        const auto& a = pop[rng.bounded(pop.size())];
        const auto& b = pop[rng.bounded(pop.size())];
        return a.objective <= b.objective ? a : b;
    };

    while (used < budget && m.n > 0 && static_cast<int>(pop.size()) == pop_size &&
           !deadline.hit()) {
        // elitism: carry the current best individuals over unchanged
        std::vector<int> order(pop.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[i] = static_cast<int>(i);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return pop[a].objective < pop[b].objective;
        });
        std::vector<Individual> next;
        next.reserve(pop_size);
        for (int e = 0; e < p.ga_elitism; ++e)
            next.push_back(pop[order[e]]);

        const auto duplicate = [&](const Assignment& bits) {
            for (const auto& ind : next)
                if (ind.bits == bits)
                    return true;
            return false;
        };
        while (static_cast<int>(next.size()) < pop_size && used < budget) {
            const Individual& pa = tournament();
            const Individual& pb = tournament();
            Assignment child = pa.bits;
            if (rng.unit() < p.ga_crossover_rate)
                for (int i = 0; i < m.n; ++i)
                    if (rng.coin())
                        child[i] = pb.bits[i];
            for (int i = 0; i < m.n; ++i)
                if (rng.unit() < mut)
                    child[i] ^= 1;
            Individual offspring = improve(std::move(child));
            // Keep the generation duplicate-free: a clone adds nothing, so its
            // slot goes to a fresh random descent instead (random immigrant).
            // Without this a converged population soaks up the whole budget
            // re-descending the same local optimum one flip at a time.
            if (duplicate(offspring.bits) && used < budget)
                offspring = improve(random_bits(m.n, rng));
            next.push_back(std::move(offspring));
        }
        if (static_cast<int>(next.size()) < pop_size)
            break; // budget ran out mid-generation; keep what we have
        pop = std::move(next);
    }

    if (r.best_bits.empty() && !pop.empty())
        r.best_bits = pop.front().bits;
    if (m.n == 0) {
        r.best_bits.clear();
        best = m.c;
    }
    r.iterations_used = used;
    r.objective = best;
    r.wall_time_ms = elapsed_ms(deadline.start);
    return r;
}

SolveReport solve_bsb(const IsingModel& m, const SolverParams& p) {
    long long steps = p.bsb_steps > 0 ? p.bsb_steps
                                      : (p.iteration_budget > 0 ? p.iteration_budget
                                                                : default_budget(Method::bsb));
    if (steps <= 0)
        throw InvalidParam("step budget must be positive");
    if (!(p.bsb_dt > 0.0))
        throw InvalidParam("dt must be positive");
    if (!(p.bsb_a0 > 0.0))
        throw InvalidParam("a0 must be positive");
    if (p.bsb_c0 && !(*p.bsb_c0 > 0.0))
        throw InvalidParam("c0 must be positive");

    SolveReport r = make_report(p);
    const Deadline deadline{p.time_budget_ms, Clock::now()};
    Rng rng(p.seed);
    const int n = m.n;

    // c0 default: 0.5 / (sqrt(n) * rms(J)), rms over all off-diagonal pairs
    // (zeros included).
    double c0;
    if (p.bsb_c0) {
        c0 = *p.bsb_c0;
    } else {
        double ss = 0.0;
        for (int i = 0; i < n; ++i)
            for (const auto& [j, jij] : m.adj[i])
                ss += jij * jij;
        const double pairs = static_cast<double>(n) * (n - 1);
        const double rms = pairs > 0.0 ? std::sqrt(ss / pairs) : 0.0;
        c0 = rms > 0.0 ? 0.5 / (std::sqrt(static_cast<double>(n)) * rms) : 0.5;
    }

    std::vector<double> x(n, 0.0), y(n), force(n);
    for (int i = 0; i < n; ++i)
        y[i] = rng.range(-0.1, 0.1);

    // The model minimizes E = (1/4)(sum J s s + sum h s) + offset; the
    // integrator's convention maximizes its coupling term, so J' = -J,
    // h' = -h and the drive term enters with a minus sign.
    const double a0 = p.bsb_a0, dt = p.bsb_dt;
    long long k = 0;
    for (; k < steps && n > 0; ++k) {
        const double a = a0 * static_cast<double>(k) / static_cast<double>(steps);
        for (int i = 0; i < n; ++i) {
            double local = m.h[i];
            for (const auto& [j, jij] : m.adj[i])
                local += jij * x[j];
            force[i] = -(a0 - a) * x[i] - c0 * local;
        }
        for (int i = 0; i < n; ++i) {
            y[i] += force[i] * dt;
            x[i] += a0 * y[i] * dt;
            if (x[i] > 1.0) {
                x[i] = 1.0;
                y[i] = 0.0;
            } else if (x[i] < -1.0) {
                x[i] = -1.0;
                y[i] = 0.0;
            }
        }
        if ((k & 15) == 0 && deadline.hit()) {
            ++k;
            break;
        }
    }

    SpinVector spins(n);
    for (int i = 0; i < n; ++i)
        spins[i] = x[i] > 0.0 ? +1 : -1;
    r.best_bits = bits_from_spins(spins);
    r.objective = 2.0 * ising_energy(m, spins);
    r.iterations_used = k;
    r.wall_time_ms = elapsed_ms(deadline.start);
    return r;
}

void attach_max2sat_results(SolveReport& r, const Max2SatFormula& g) {
    r.max2sat_violated = count_violated(g, r.best_bits);
    r.oracle = direct_counts(g, r.best_bits);
    GadgetObservation obs = r.oracle.observation;
    obs.case1_d1.reset(); // retrieval sees satisfied totals only
    try {
        r.retrieval = retrieve_counts_mixed(obs);
        r.retrieval_feasible = true;
    } catch (const Infeasible&) {
        r.retrieval = {};
        r.retrieval_feasible = false;
    }
    r.retrieval_agrees = false;
    for (const auto& cand : r.retrieval.candidates)
        if (cand.violated == r.oracle.violated && cand.satisfied == r.oracle.satisfied)
            r.retrieval_agrees = true;
}

SolveReport run_solver(const Max2SatFormula& g, const SolverParams& p) {
    SolveReport r;
    if (p.method == Method::bsb) {
        r = solve_bsb(build_ising(g), p);
    } else {
        const QuboModel m = build_qubo(g);
        switch (p.method) {
        case Method::sa: r = solve_simulated_annealing(m, p); break;
        case Method::tabu: r = solve_tabu(m, p); break;
        default: r = solve_ga_local_search(m, p); break;
        }
    }
    attach_max2sat_results(r, g);
    return r;
}

SolverParams preset(const std::string& name) {
    SolverParams p;
    p.name = name;
    if (name == "default-sa") {
        p.method = Method::sa;
    } else if (name == "default-tabu") {
        p.method = Method::tabu;
    } else if (name == "default-ga") {
        p.method = Method::ga_ls;
    } else if (name == "default-bsb") {
        p.method = Method::bsb;
    } else if (name == "paper-bsb") {
        // large-step configuration: dt=20 over 5000 steps
        p.method = Method::bsb;
        p.bsb_dt = 20.0;
        p.bsb_steps = 5000;
    } else {
        throw InvalidParam("unknown preset `" + name + "`");
    }
    return p;
}

std::vector<std::string> preset_names() {
    return {"default-sa", "default-tabu", "default-ga", "default-bsb", "paper-bsb"};
}

SolverParams params_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw InvalidParam("solver params must be a JSON object");
    SolverParams p;
    if (j.contains("preset"))
        p = preset(j.at("preset").get<std::string>());
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "preset") {
                continue;
            } else if (key == "method") {
                p.method = method_from_name(value.get<std::string>());
            } else if (key == "name") {
                p.name = value.get<std::string>();
            } else if (key == "seed") {
                p.seed = value.get<uint64_t>();
            } else if (key == "iteration_budget") {
                p.iteration_budget = value.get<long long>();
            } else if (key == "time_budget_ms") {
                p.time_budget_ms = value.get<double>();
            } else if (key == "sa_t_initial") {
                p.sa_t_initial = value.get<double>();
            } else if (key == "sa_t_final") {
                p.sa_t_final = value.get<double>();
            } else if (key == "sa_cooling_ratio") {
                p.sa_cooling_ratio = value.get<double>();
            } else if (key == "tabu_tenure") {
                p.tabu_tenure = value.get<int>();
            } else if (key == "tabu_aspiration") {
                p.tabu_aspiration = value.get<bool>();
            } else if (key == "ga_population") {
                p.ga_population = value.get<int>();
            } else if (key == "ga_crossover_rate") {
                p.ga_crossover_rate = value.get<double>();
            } else if (key == "ga_mutation_rate") {
                p.ga_mutation_rate = value.get<double>();
            } else if (key == "ga_elitism") {
                p.ga_elitism = value.get<int>();
            } else if (key == "bsb_dt") {
                p.bsb_dt = value.get<double>();
            } else if (key == "bsb_steps") {
                p.bsb_steps = value.get<long long>();
            } else if (key == "bsb_a0") {
                p.bsb_a0 = value.get<double>();
            } else if (key == "bsb_c0") {
                p.bsb_c0 = value.get<double>();
            } else {
                throw InvalidParam("unknown solver parameter `" + key + "`");
            }
        } catch (const nlohmann::json::exception& e) {
            throw InvalidParam("bad value for `" + key + "`: " + e.what());
        }
    }
    if (p.iteration_budget < 0)
        throw InvalidParam("iteration budget must be positive");
    if (p.time_budget_ms && !(*p.time_budget_ms > 0.0))
        throw InvalidParam("time budget must be positive");
    return p;
}

nlohmann::json params_to_json(const SolverParams& p) {
    nlohmann::json j{
        {"method", method_name(p.method)},
        {"seed", p.seed},
        {"iteration_budget", p.iteration_budget},
        {"sa_t_initial", p.sa_t_initial},
        {"sa_t_final", p.sa_t_final},
        {"tabu_tenure", p.tabu_tenure},
        {"tabu_aspiration", p.tabu_aspiration},
        {"ga_population", p.ga_population},
        {"ga_crossover_rate", p.ga_crossover_rate},
        {"ga_mutation_rate", p.ga_mutation_rate},
        {"ga_elitism", p.ga_elitism},
        {"bsb_dt", p.bsb_dt},
        {"bsb_steps", p.bsb_steps},
        {"bsb_a0", p.bsb_a0},
    };
    if (!p.name.empty())
        j["name"] = p.name;
    if (p.time_budget_ms)
        j["time_budget_ms"] = *p.time_budget_ms;
    if (p.sa_cooling_ratio)
        j["sa_cooling_ratio"] = *p.sa_cooling_ratio;
    if (p.bsb_c0)
        j["bsb_c0"] = *p.bsb_c0;
    return j;
}

nlohmann::json report_to_json(const SolveReport& r, bool include_timing) {
    std::string bits(r.best_bits.size(), '0');
    for (size_t i = 0; i < r.best_bits.size(); ++i)
        if (r.best_bits[i])
            bits[i] = '1';
    nlohmann::json j{
        {"method", method_name(r.method)},
        {"label", r.method_label},
        {"seed", r.seed},
        {"iterations", r.iterations_used},
        {"objective", r.objective},
        {"bits", bits},
    };
    if (include_timing)
        j["wall_ms"] = r.wall_time_ms;
    if (r.max2sat_violated >= 0) {
        j["max2sat_violated"] = r.max2sat_violated;
        j["original_violated"] = r.oracle.violated;
        j["original_satisfied"] = r.oracle.satisfied;
        j["oracle"] = {{"violated", r.oracle.violated}, {"satisfied", r.oracle.satisfied}};
        nlohmann::json cands = nlohmann::json::array();
        for (const auto& c : r.retrieval.candidates)
            cands.push_back({{"violated", c.violated}, {"satisfied", c.satisfied}});
        j["retrieval"] = {{"feasible", r.retrieval_feasible},
                          {"exact", r.retrieval.exact},
                          {"agrees", r.retrieval_agrees},
                          {"candidates", cands}};
    }
    return j;
}

} // namespace satq
