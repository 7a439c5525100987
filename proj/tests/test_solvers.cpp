#include <doctest.h>

#include <limits>

#include "satq/rng.hpp"
#include "satq/solvers.hpp"

using namespace satq;

namespace {

Max2SatFormula raw_formula(int n, std::vector<Clause> clauses) {
    Max2SatFormula g;
    g.num_original_vars = n;
    g.num_vars = n;
    g.clauses = std::move(clauses);
    return g;
}

SolverParams quick(Method m, uint64_t seed = 1, long long budget = 0) {
    SolverParams p;
    p.method = m;
    p.seed = seed;
    p.iteration_budget = budget;
    return p;
}

double brute_force_optimum(const QuboModel& m) {
    double best = std::numeric_limits<double>::infinity();
    for (int v = 0; v < (1 << m.n); ++v) {
        Assignment x(m.n);
        for (int i = 0; i < m.n; ++i)
            x[i] = (v >> i) & 1;
        best = std::min(best, qubo_objective(m, x));
    }
    return best;
}

} // namespace

TEST_CASE("sa/tabu/ga solve the one-clause model") {
    const QuboModel m = build_qubo(raw_formula(2, {{{1, +1}, {2, +1}}}));
    for (Method method : {Method::sa, Method::tabu, Method::ga_ls}) {
        SolveReport r;
        switch (method) {
        case Method::sa: r = solve_simulated_annealing(m, quick(method, 3, 100)); break;
        case Method::tabu: r = solve_tabu(m, quick(method, 3, 10)); break;
        default: r = solve_ga_local_search(m, quick(method, 3, 100)); break;
        }
        CHECK(r.objective == 0.0);
        CHECK(r.objective == qubo_objective(m, r.best_bits));
    }
}

TEST_CASE("tabu handles the 2-clause xor-ish model and plateaus") {
    // (x1|x2) & (~x1|~x2): optimum 0 at x1 != x2
    const QuboModel m =
        build_qubo(raw_formula(2, {{{1, +1}, {2, +1}}, {{1, -1}, {2, -1}}}));
    const SolveReport r = solve_tabu(m, quick(Method::tabu, 5, 50));
    CHECK(r.objective == 0.0);

    QuboModel plateau;
    plateau.n = 3;
    plateau.adj.resize(3);
    plateau.b.assign(3, 0.0);
    plateau.c = 5.0;
    const SolveReport p = solve_tabu(plateau, quick(Method::tabu, 5, 20));
    CHECK(p.objective == 5.0);
}

TEST_CASE("ga_ls finds the unique optimum of unit-clause models") {
    const QuboModel m = build_qubo(raw_formula(3, {{{1, +1}}, {{2, -1}}, {{3, +1}}}));
    const SolveReport r = solve_ga_local_search(m, quick(Method::ga_ls, 1, 1000));
    CHECK(r.objective == 0.0);
    CHECK(r.best_bits == Assignment{1, 0, 1});
}

TEST_CASE("solvers accept the empty model") {
    QuboModel empty;
    const SolveReport r = solve_ga_local_search(empty, quick(Method::ga_ls, 1, 10));
    CHECK(r.objective == 0.0);
    CHECK(r.best_bits.empty());
    const SolveReport s = solve_simulated_annealing(empty, quick(Method::sa, 1, 10));
    CHECK(s.objective == 0.0);
}

TEST_CASE("bsb: ferromagnetic pair aligns, field forces the sign") {
    IsingModel ferro;
    ferro.n = 2;
    ferro.adj = {{{1, -1.0}}, {{0, -1.0}}}; // J12 = -1 favors agreement
    ferro.h.assign(2, 0.0);
    const SolveReport r = solve_bsb(ferro, quick(Method::bsb, 7, 200));
    const SpinVector s = spins_from_bits(r.best_bits);
    CHECK(s[0] == s[1]);
    double ground = std::numeric_limits<double>::infinity();
    for (int a : {-1, +1})
        for (int b : {-1, +1})
            ground = std::min(ground, ising_energy(ferro, {static_cast<int8_t>(a),
                                                           static_cast<int8_t>(b)}));
    CHECK(ising_energy(ferro, s) == ground);

    IsingModel field;
    field.n = 1;
    field.adj.resize(1);
    field.h = {1.0};
    const SolveReport f = solve_bsb(field, quick(Method::bsb, 11, 200));
    CHECK(spins_from_bits(f.best_bits)[0] == -1);
}

TEST_CASE("bsb objective matches the qubo scale on gadget models") {
    const CnfFormula f = generate_random_3sat(10, 12, 42);
    const Max2SatFormula g = gadget_convert(f);
    const SolveReport r = solve_bsb(build_ising(g), quick(Method::bsb, 3, 500));
    CHECK(r.objective == 2.0 * count_violated(g, r.best_bits));
}

TEST_CASE("trivial all-equal outputs violate clauses on a gadget model") {
    const CnfFormula f = generate_random_3sat(30, 15, 8); // rho = 0.5
    const Max2SatFormula g = gadget_convert(f);
    CHECK(count_violated(g, Assignment(g.num_vars, 0)) > 0);
    CHECK(count_violated(g, Assignment(g.num_vars, 1)) > 0);
}

TEST_CASE("anytime monotonicity of the best-seen objective") {
    const CnfFormula f = generate_random_3sat(12, 30, 5);
    const QuboModel m = build_qubo(gadget_convert(f));
    for (Method method : {Method::sa, Method::tabu, Method::ga_ls}) {
        double last = std::numeric_limits<double>::infinity();
        long long last_iter = 0;
        const BestCallback cb = [&](long long iter, double best) {
            CHECK(best < last);
            CHECK(iter >= last_iter);
            last = best;
            last_iter = iter;
        };
        switch (method) {
        case Method::sa: solve_simulated_annealing(m, quick(method, 2, 5000), cb); break;
        case Method::tabu: solve_tabu(m, quick(method, 2, 500), cb); break;
        default: solve_ga_local_search(m, quick(method, 2, 5000), cb); break;
        }
        CHECK(last < std::numeric_limits<double>::infinity());
    }
}

TEST_CASE("determinism: identical params give identical reports") {
    const CnfFormula f = generate_random_3sat(10, 20, 77);
    const Max2SatFormula g = gadget_convert(f);
    for (Method method : {Method::sa, Method::tabu, Method::ga_ls, Method::bsb}) {
        SolverParams p = quick(method, 99, method == Method::tabu ? 300 : 2000);
        const SolveReport a = run_solver(g, p);
        const SolveReport b = run_solver(g, p);
        CHECK(report_to_json(a, false) == report_to_json(b, false));
        CHECK(a.best_bits == b.best_bits);
        CHECK(a.iterations_used == b.iterations_used);
    }
}

TEST_CASE("small-instance optimality with a 1e5 budget") {
    for (int rep = 0; rep < 4; ++rep) {
        const CnfFormula f = generate_random_3sat(9, 5, 300 + rep); // n' = 14
        const QuboModel m = build_qubo(gadget_convert(f));
        const double optimum = brute_force_optimum(m);
        double best = std::numeric_limits<double>::infinity();
        best = std::min(best,
                        solve_simulated_annealing(m, quick(Method::sa, 1, 100000)).objective);
        best = std::min(best, solve_tabu(m, quick(Method::tabu, 1, 10000)).objective);
        best = std::min(best,
                        solve_ga_local_search(m, quick(Method::ga_ls, 1, 100000)).objective);
        CHECK(best == optimum);
    }
}

TEST_CASE("report consistency via run_solver") {
    const CnfFormula f = generate_random_3sat(8, 10, 21);
    const Max2SatFormula g = gadget_convert(f);
    const SolveReport r = run_solver(g, quick(Method::ga_ls, 4, 20000));
    CHECK(r.objective == qubo_objective(build_qubo(g), r.best_bits));
    CHECK(r.objective == 2.0 * r.max2sat_violated);
    CHECK(r.oracle.violated + r.oracle.satisfied == f.num_clauses());
    CHECK(r.retrieval_feasible);
    CHECK(r.retrieval_agrees);
}

TEST_CASE("attach_max2sat_results flags non-optimal ancillaries") {
    const Max2SatFormula g = gadget_convert(parse_dimacs("p cnf 3 1\n1 2 3 0"));
    SolveReport r;
    // Three true literals with d=0 satisfy 6 of 10; the d=0 system then
    // misattributes the group as violated. Feasible, but off the oracle.
    r.best_bits = {1, 1, 1, 0};
    attach_max2sat_results(r, g);
    CHECK(r.max2sat_violated == 4);
    CHECK(r.oracle.violated == 0);
    CHECK(r.oracle.satisfied == 1);
    CHECK(r.retrieval_feasible);
    REQUIRE(r.retrieval.candidates.size() == 1);
    CHECK(r.retrieval.candidates[0].violated == 1);
    CHECK(!r.retrieval_agrees);

    SolveReport ok;
    ok.best_bits = with_optimal_ancillas(g, {1, 1, 1});
    attach_max2sat_results(ok, g);
    CHECK(ok.max2sat_violated == 3);
    CHECK(ok.retrieval_agrees);
}

TEST_CASE("parameter validation") {
    const QuboModel m = build_qubo(raw_formula(2, {{{1, +1}, {2, +1}}}));
    SolverParams p = quick(Method::ga_ls, 1, 100);
    p.ga_population = 1;
    CHECK_THROWS_AS(solve_ga_local_search(m, p), InvalidParam);
    p = quick(Method::ga_ls, 1, 100);
    p.ga_mutation_rate = 1.5;
    CHECK_THROWS_AS(solve_ga_local_search(m, p), InvalidParam);
    p = quick(Method::sa, 1, 100);
    p.sa_t_final = 0.0;
    CHECK_THROWS_AS(solve_simulated_annealing(m, p), InvalidParam);
    p = quick(Method::bsb, 1, 100);
    p.bsb_dt = 0.0;
    CHECK_THROWS_AS(solve_bsb(build_ising(raw_formula(2, {{{1, +1}, {2, +1}}})), p),
                    InvalidParam);
    CHECK_THROWS_AS(method_from_name("annealer"), InvalidParam);
    CHECK(method_from_name("ga_ls") == Method::ga_ls);
    CHECK(method_name(Method::bsb) == "bsb");
}

TEST_CASE("presets and json round trip") {
    const SolverParams pb = preset("paper-bsb");
    CHECK(pb.method == Method::bsb);
    CHECK(pb.bsb_dt == 20.0);
    CHECK(pb.bsb_steps == 5000);
    CHECK_THROWS_AS(preset("nope"), InvalidParam);
    CHECK(preset_names().size() == 5);

    SolverParams p = quick(Method::tabu, 123, 777);
    p.tabu_tenure = 9;
    p.time_budget_ms = 1500.0;
    const SolverParams q = params_from_json(params_to_json(p));
    CHECK(q.method == Method::tabu);
    CHECK(q.seed == 123);
    CHECK(q.iteration_budget == 777);
    CHECK(q.tabu_tenure == 9);
    REQUIRE(q.time_budget_ms.has_value());
    CHECK(*q.time_budget_ms == 1500.0);

    CHECK_THROWS_AS(params_from_json(nlohmann::json{{"tenure", 3}}), InvalidParam);
    CHECK_THROWS_AS(params_from_json(nlohmann::json::array()), InvalidParam);
    const SolverParams viaPreset =
        params_from_json(nlohmann::json{{"preset", "paper-bsb"}, {"seed", 8}});
    CHECK(viaPreset.bsb_dt == 20.0);
    CHECK(viaPreset.seed == 8);
}

TEST_CASE("time budget stops a long run early") {
    const CnfFormula f = generate_random_3sat(40, 160, 6);
    const QuboModel m = build_qubo(gadget_convert(f));
    SolverParams p = quick(Method::sa, 1, 50000000);
    p.time_budget_ms = 30.0;
    const SolveReport r = solve_simulated_annealing(m, p);
    CHECK(r.iterations_used < 50000000);
}
