#include "satq/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "satq/bench.hpp"
#include "satq/cnf.hpp"
#include "satq/reduction.hpp"
#include "satq/retrieval.hpp"
#include "satq/solvers.hpp"

namespace satq {

namespace {

using nlohmann::json;

void emit(const std::string& path, std::ostream& fallback,
          const std::function<void(std::ostream&)>& write) {
    if (path.empty()) {
        write(fallback);
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw Error("cannot write " + path);
    write(f);
}

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

Assignment read_assignment_file(const std::string& path, int expected_bits) {
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open " + path);
    Assignment bits;
    char ch;
    while (f.get(ch)) {
        if (ch == '0' || ch == '1')
            bits.push_back(ch == '1');
        else if (!isspace(static_cast<unsigned char>(ch)))
            throw ParseError(path + ": assignment files hold only 0/1 and whitespace");
    }
    if (static_cast<int>(bits.size()) != expected_bits)
        throw ParseError(path + ": " + std::to_string(bits.size()) + " bits, expected " +
                         std::to_string(expected_bits));
    return bits;
}

json retrieval_to_json(const RetrievalResult& r, bool feasible) {
    json cands = json::array();
    for (const auto& c : r.candidates) {
        json jc{{"violated", c.violated}, {"satisfied", c.satisfied}};
        if (c.d1_split)
            jc["d1_split"] = {{"one_true", c.d1_split->first},
                              {"two_or_three_true", c.d1_split->second}};
        cands.push_back(std::move(jc));
    }
    return {{"feasible", feasible}, {"exact", feasible && r.exact}, {"candidates", cands}};
}

json observation_to_json(const GadgetObservation& o) {
    json j{{"satisfied_d0", o.satisfied_d0},
           {"groups_d0", o.groups_d0},
           {"satisfied_d1", o.satisfied_d1},
           {"groups_d1", o.groups_d1}};
    if (o.case1_d1)
        j["case1_d1"] = *o.case1_d1;
    return j;
}

struct GenArgs {
    int n = 0, m = 0;
    uint64_t seed = 1;
    std::string out_path;
};

struct ConvertArgs {
    std::string input, to, out_path;
};

struct SolveArgs {
    std::string input, method, preset_name, params_path, out_path;
    long long budget = 0;
    uint64_t seed = 0;
    bool seed_set = false, budget_set = false, method_set = false;
    double time_ms = 0.0;
    bool time_set = false;
    bool timing = false;
};

struct RetrieveArgs {
    std::string m2s_path, assignment_path, out_path;
    long long satisfied_d0 = 0, satisfied_d1 = 0;
    int groups_d0 = 0, groups_d1 = 0, case1_d1 = 0;
};

struct BenchArgs {
    std::string spec_path, rows_path, summary_path, sweep_path;
    std::string reference_path, compare_path;
    bool timing = false;
};

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"3-SAT -> Max 2-SAT -> QUBO/Ising toolkit"};
    app.name("satqubo");
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random strict 3-SAT instance");
    gen_cmd->add_option("-n", gen.n, "number of variables")->required();
    gen_cmd->add_option("-m", gen.m, "number of clauses")->required();
    gen_cmd->add_option("--seed", gen.seed, "generator seed (default 1)");
    gen_cmd->add_option("-o,--output", gen.out_path, "output file (default stdout)");
    gen_cmd->callback([&] {
        const CnfFormula f = generate_random_3sat(gen.n, gen.m, gen.seed);
        emit(gen.out_path, out, [&](std::ostream& os) { write_dimacs(f, os); });
    });

    ConvertArgs conv;
    auto* conv_cmd =
        app.add_subcommand("convert", "Convert a 3-SAT file to Max 2-SAT, QUBO or Ising");
    conv_cmd->add_option("input", conv.input, "DIMACS CNF file")->required();
    conv_cmd->add_option("--to", conv.to, "target format")
        ->required()
        ->check(CLI::IsMember({"max2sat", "qubo", "ising"}));
    conv_cmd->add_option("-o,--output", conv.out_path, "output file (default stdout)");
    conv_cmd->callback([&] {
        const CnfFormula f = parse_dimacs_file(conv.input);
        const Max2SatFormula g = gadget_convert(f);
        emit(conv.out_path, out, [&](std::ostream& os) {
            if (conv.to == "max2sat")
                write_max2sat(g, os);
            else if (conv.to == "qubo")
                write_qubo(build_qubo(g), os);
            else
                write_ising(build_ising(g), os);
        });
    });

    SolveArgs sol;
    auto* sol_cmd = app.add_subcommand(
        "solve", "Convert a 3-SAT file, minimize the model, retrieve original counts");
    sol_cmd->add_option("input", sol.input, "DIMACS CNF file");
    auto* mopt = sol_cmd->add_option("--method", sol.method, "sa, tabu, ga_ls or bsb");
    auto* popt = sol_cmd->add_option("--preset", sol.preset_name,
                                     "named preset (see `solve --list-presets`)");
    auto* jopt = sol_cmd->add_option("--params", sol.params_path,
                                     "solver parameters as a JSON file");
    auto* bopt = sol_cmd->add_option("--budget", sol.budget, "iteration budget");
    auto* sopt = sol_cmd->add_option("--seed", sol.seed, "solver seed");
    auto* topt = sol_cmd->add_option("--time-ms", sol.time_ms, "wall-clock budget");
    sol_cmd->add_flag("--timing", sol.timing, "include wall_ms in the report");
    bool list_presets = false;
    sol_cmd->add_flag("--list-presets", list_presets, "print preset names and exit");
    sol_cmd->add_option("-o,--output", sol.out_path, "output file (default stdout)");
    popt->excludes(jopt);
    sol_cmd->callback([&] {
        if (list_presets) {
            for (const auto& name : preset_names())
                out << name << '\n';
            return;
        }
        if (sol.input.empty())
            throw InvalidParam("solve needs a DIMACS CNF file");
        sol.method_set = mopt->count() > 0;
        sol.budget_set = bopt->count() > 0;
        sol.seed_set = sopt->count() > 0;
        sol.time_set = topt->count() > 0;

        SolverParams p;
        if (!sol.params_path.empty())
            p = params_from_json(load_json_file(sol.params_path));
        else if (!sol.preset_name.empty())
            p = preset(sol.preset_name);
        if (sol.method_set)
            p.method = method_from_name(sol.method);
        if (sol.budget_set)
            p.iteration_budget = sol.budget;
        if (sol.seed_set)
            p.seed = sol.seed;
        if (sol.time_set) {
            if (!(sol.time_ms > 0.0))
                throw InvalidParam("time budget must be positive");
            p.time_budget_ms = sol.time_ms;
        }

        const CnfFormula f = parse_dimacs_file(sol.input);
        const SolveReport r = run_solver(gadget_convert(f), p);
        json j = report_to_json(r, sol.timing);
        j["instance"] = sol.input;
        emit(sol.out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    });

    RetrieveArgs ret;
    auto* ret_cmd = app.add_subcommand(
        "retrieve", "Recover original satisfied/violated counts from solved output");
    ret_cmd->add_option("--m2s", ret.m2s_path, "converted formula file (convert --to max2sat)");
    ret_cmd->add_option("--assignment", ret.assignment_path,
                        "solved bits over all variables, as 0/1 text");
    auto* s0 = ret_cmd->add_option("--satisfied-d0", ret.satisfied_d0,
                                   "satisfied clauses over groups with d=0");
    auto* g0 = ret_cmd->add_option("--groups-d0", ret.groups_d0, "group count with d=0");
    auto* s1 = ret_cmd->add_option("--satisfied-d1", ret.satisfied_d1,
                                   "satisfied clauses over groups with d=1");
    auto* g1 = ret_cmd->add_option("--groups-d1", ret.groups_d1, "group count with d=1");
    auto* c1 = ret_cmd->add_option("--case1-d1", ret.case1_d1,
                                   "known all-false group count with d=1 (optional)");
    ret_cmd->add_option("-o,--output", ret.out_path, "output file (default stdout)");
    ret_cmd->callback([&] {
        const bool file_mode = !ret.m2s_path.empty() || !ret.assignment_path.empty();
        const bool totals_mode = s0->count() || g0->count() || s1->count() || g1->count();
        if (file_mode == totals_mode)
            throw InvalidParam(
                "give --m2s with --assignment, or the --satisfied-*/--groups-* totals");
        json j;
        if (file_mode) {
            if (ret.m2s_path.empty() || ret.assignment_path.empty())
                throw InvalidParam("--m2s and --assignment go together");
            std::ifstream f(ret.m2s_path);
            if (!f)
                throw Error("cannot open " + ret.m2s_path);
            const Max2SatFormula g = read_max2sat(f);
            const Assignment x = read_assignment_file(ret.assignment_path, g.num_vars);
            const DirectCounts oracle = direct_counts(g, x);
            GadgetObservation obs = oracle.observation;
            obs.case1_d1.reset(); // the theorems see satisfied totals only
            RetrievalResult r;
            bool feasible = true;
            try {
                r = retrieve_counts_mixed(obs);
            } catch (const Infeasible&) {
                feasible = false;
            }
            bool agrees = false;
            for (const auto& cand : r.candidates)
                agrees |= cand.violated == oracle.violated &&
                          cand.satisfied == oracle.satisfied;
            j["oracle"] = {{"violated", oracle.violated}, {"satisfied", oracle.satisfied}};
            j["observation"] = observation_to_json(oracle.observation);
            j["retrieval"] = retrieval_to_json(r, feasible);
            j["agrees"] = agrees;
        } else {
            GadgetObservation obs;
            obs.satisfied_d0 = ret.satisfied_d0;
            obs.groups_d0 = ret.groups_d0;
            obs.satisfied_d1 = ret.satisfied_d1;
            obs.groups_d1 = ret.groups_d1;
            if (c1->count())
                obs.case1_d1 = ret.case1_d1;
            const RetrievalResult r = retrieve_counts_mixed(obs); // Infeasible -> exit 1
            j["observation"] = observation_to_json(obs);
            j["retrieval"] = retrieval_to_json(r, true);
        }
        emit(ret.out_path, out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
    });

    BenchArgs ben;
    auto* ben_cmd =
        app.add_subcommand("bench", "Run an experiment spec over instances and solvers");
    ben_cmd->add_option("--spec", ben.spec_path, "experiment spec JSON")->required();
    ben_cmd->add_option("-o,--rows", ben.rows_path, "result rows CSV (default stdout)");
    ben_cmd->add_option("--summary", ben.summary_path,
                        "summary JSON (default stdout when -o is used)");
    ben_cmd->add_option("--sweep", ben.sweep_path,
                        "aggregate density-sweep CSV (generator specs only)");
    auto* ref_opt =
        ben_cmd->add_option("--reference", ben.reference_path, "reference CSV to compare");
    ben_cmd->add_option("--compare", ben.compare_path,
                        "comparison CSV `instance,solver,best,reference`")
        ->needs(ref_opt);
    ben_cmd->add_flag("--timing", ben.timing,
                      "keep measured wall_ms in the rows CSV (default zeroed)");
    ben_cmd->callback([&] {
        const ExperimentSpec spec = experiment_from_json(load_json_file(ben.spec_path));
        std::vector<ResultRow> rows;
        if (!ben.sweep_path.empty()) {
            std::vector<SweepRow> sweep = density_sweep(spec, &rows);
            emit(ben.sweep_path, out,
                 [&](std::ostream& os) { write_sweep_csv(sweep, os); });
        } else {
            rows = run_experiment(spec);
        }
        if (!ben.timing)
            for (auto& row : rows)
                row.wall_ms = 0.0;
        emit(ben.rows_path, out, [&](std::ostream& os) { write_results_csv(rows, os); });

        const json summary = summary_to_json(summarize(spec.name, rows));
        if (!ben.summary_path.empty())
            emit(ben.summary_path, out,
                 [&](std::ostream& os) { os << summary.dump(2) << '\n'; });
        else if (!ben.rows_path.empty())
            out << summary.dump(2) << '\n';

        if (!ben.reference_path.empty()) {
            std::ifstream rf(ben.reference_path);
            if (!rf)
                throw Error("cannot open " + ben.reference_path);
            const ReferenceComparison cmp =
                compare_with_reference(rows, read_reference_csv(rf));
            emit(ben.compare_path, out, [&](std::ostream& os) {
                os << "instance,solver,best,reference\n";
                for (const auto& row : cmp.matched)
                    os << row.instance << ',' << row.solver << ',' << row.best << ','
                       << row.reference << '\n';
            });
            for (const auto& id : cmp.missing_in_reference)
                err << "warning: no reference value for " << id << '\n';
            for (const auto& id : cmp.missing_in_results)
                err << "warning: reference lists unsolved instance " << id << '\n';
        }
    });

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const InvalidParam& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace satq
