#include "satq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "satq/rng.hpp"

namespace fs = std::filesystem;

namespace satq {

namespace {

uint64_t hash_str(const std::string& s) { return fnv1a(s.data(), s.size()); }

struct Instance {
    std::string id;
    CnfFormula cnf;
    Max2SatFormula converted;
};

std::string point_id(int n, int m, int index) {
    char buf[64];
    snprintf(buf, sizeof(buf), "rnd-n%03d-m%04d-i%02d", n, m, index);
    return buf;
}

std::vector<Instance> load_instances(const ExperimentSpec& spec) {
    std::vector<Instance> out;
    if (spec.generator && !spec.source_dir.empty())
        throw InvalidParam("give either source_dir or generator, not both");
    if (spec.generator) {
        const GeneratorSpec& g = *spec.generator;
        if (g.instances_per_point < 1)
            throw InvalidParam("instances_per_point must be positive");
        std::set<int> ms(g.m_grid.begin(), g.m_grid.end());
        for (double rho : g.rho_grid) {
            if (!(rho > 0.0))
                throw InvalidParam("density grid values must be positive");
            ms.insert(static_cast<int>(std::llround(rho * g.n)));
        }
        if (ms.empty())
            throw InvalidParam("generator needs a non-empty rho_grid or m_grid");
        for (int m : ms) {
            for (int i = 0; i < g.instances_per_point; ++i) {
                Instance inst;
                inst.id = point_id(g.n, m, i);
                inst.cnf = generate_random_3sat(g.n, m,
                                                splitmix64(g.seed ^ hash_str(inst.id)));
                out.push_back(std::move(inst));
            }
        }
    } else {
        if (spec.source_dir.empty())
            throw InvalidParam("experiment needs a source_dir or a generator");
        if (!fs::is_directory(spec.source_dir))
            throw InvalidParam("not a directory: " + spec.source_dir);
        std::vector<fs::path> paths;
        for (const auto& e : fs::directory_iterator(spec.source_dir))
            if (e.is_regular_file() && e.path().extension() == ".cnf")
                paths.push_back(e.path());
        std::sort(paths.begin(), paths.end());
        if (paths.empty())
            throw InvalidParam("no .cnf files in " + spec.source_dir);
        if (spec.sample) {
            if (spec.sample->count < 1)
                throw InvalidParam("sample count must be positive");
            if (spec.sample->count < static_cast<int>(paths.size())) {
                // deterministic partial Fisher-Yates, then restore name order
                Rng rng(spec.sample->seed);
                for (int i = 0; i < spec.sample->count; ++i) {
                    const size_t j = i + rng.bounded(paths.size() - i);
                    std::swap(paths[i], paths[j]);
                }
                paths.resize(spec.sample->count);
                std::sort(paths.begin(), paths.end());
            }
        }
        for (const auto& p : paths) {
            Instance inst;
            inst.id = p.stem().string();
            inst.cnf = parse_dimacs_file(p.string());
            out.push_back(std::move(inst));
        }
    }
    for (auto& inst : out)
        inst.converted = gadget_convert(inst.cnf);
    return out;
}

void print_number(std::ostream& out, double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        out << static_cast<long long>(v);
    } else {
        char buf[40];
        snprintf(buf, sizeof(buf), "%.10g", v);
        out << buf;
    }
}

} // namespace

double percentile_linear(std::vector<double> values, double p) {
    if (values.empty())
        throw InvalidParam("percentile of an empty sample");
    if (!(p >= 0.0 && p <= 100.0))
        throw InvalidParam("percentile must be in [0, 100]");
    std::sort(values.begin(), values.end());
    const double r = p / 100.0 * static_cast<double>(values.size() - 1);
    const size_t lo = static_cast<size_t>(std::floor(r));
    const size_t hi = static_cast<size_t>(std::ceil(r));
    if (lo == hi)
        return values[lo];
    const double w = r - static_cast<double>(lo);
    return values[lo] * (1.0 - w) + values[hi] * w;
}

std::vector<ResultRow> run_experiment(const ExperimentSpec& spec) {
    if (spec.solvers.empty())
        throw InvalidParam("experiment needs at least one solver");
    if (spec.trials_per_instance < 1)
        throw InvalidParam("trials_per_instance must be positive");
    if (spec.workers < 1)
        throw InvalidParam("workers must be positive");
    std::set<std::string> labels;
    for (const auto& s : spec.solvers) {
        const std::string label = s.name.empty() ? method_name(s.method) : s.name;
        if (!labels.insert(label).second)
            throw InvalidParam("duplicate solver label `" + label +
                               "`; give each entry a distinct name");
    }

    const std::vector<Instance> instances = load_instances(spec);

    struct Job {
        int inst, solver, trial; // trial is 1-based
    };
    std::vector<Job> jobs;
    jobs.reserve(instances.size() * spec.solvers.size() * spec.trials_per_instance);
    for (size_t i = 0; i < instances.size(); ++i)
        for (size_t s = 0; s < spec.solvers.size(); ++s)
            for (int t = 1; t <= spec.trials_per_instance; ++t)
                jobs.push_back({static_cast<int>(i), static_cast<int>(s), t});

    std::vector<ResultRow> rows(jobs.size());
    std::atomic<size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const size_t j = cursor.fetch_add(1);
            if (j >= jobs.size())
                return;
            const Job& job = jobs[j];
            const Instance& inst = instances[job.inst];
            SolverParams p = spec.solvers[job.solver];
            p.seed = splitmix64(p.seed ^ hash_str(inst.id) ^
                                static_cast<uint64_t>(job.trial));
            const SolveReport rep = run_solver(inst.converted, p);

            ResultRow& row = rows[j];
            row.instance = inst.id;
            row.n_vars = inst.cnf.num_vars;
            row.n_clauses = inst.cnf.num_clauses();
            row.density = inst.cnf.density();
            row.solver = rep.method_label;
            row.trial = job.trial;
            row.seed = p.seed;
            row.max2sat_violated = rep.max2sat_violated;
            row.original_violated = rep.oracle.violated;
            row.objective = rep.objective;
            row.iterations = rep.iterations_used;
            row.wall_ms = rep.wall_time_ms;
        }
    };
    if (spec.workers == 1 || jobs.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        const int k = std::min<int>(spec.workers, static_cast<int>(jobs.size()));
        pool.reserve(k);
        for (int i = 0; i < k; ++i)
            pool.emplace_back(worker);
        for (auto& th : pool)
            th.join();
    }

    std::sort(rows.begin(), rows.end(), [](const ResultRow& a, const ResultRow& b) {
        return std::tie(a.instance, a.solver, a.trial) <
               std::tie(b.instance, b.solver, b.trial);
    });
    return rows;
}

std::map<std::pair<std::string, std::string>, int>
per_instance_best(const std::vector<ResultRow>& rows) {
    std::map<std::pair<std::string, std::string>, int> best;
    for (const auto& r : rows) {
        const auto key = std::make_pair(r.instance, r.solver);
        auto it = best.find(key);
        if (it == best.end())
            best.emplace(key, r.original_violated);
        else
            it->second = std::min(it->second, r.original_violated);
    }
    return best;
}

std::vector<SweepRow> density_sweep(const ExperimentSpec& spec,
                                    std::vector<ResultRow>* rows_out) {
    if (!spec.generator)
        throw InvalidParam("density_sweep needs a generator source");
    const std::vector<ResultRow> rows = run_experiment(spec);

    // (density, solver) -> per-instance bests
    std::map<std::pair<double, std::string>, std::map<std::string, int>> cells;
    for (const auto& r : rows) {
        auto& cell = cells[{r.density, r.solver}];
        auto it = cell.find(r.instance);
        if (it == cell.end())
            cell.emplace(r.instance, r.original_violated);
        else
            it->second = std::min(it->second, r.original_violated);
    }
    std::vector<SweepRow> out;
    out.reserve(cells.size());
    for (const auto& [key, cell] : cells) {
        std::vector<double> bests;
        bests.reserve(cell.size());
        double sum = 0.0;
        for (const auto& [_, v] : cell) {
            bests.push_back(v);
            sum += v;
        }
        SweepRow s;
        s.density = key.first;
        s.solver = key.second;
        s.mean_best = sum / static_cast<double>(bests.size());
        s.median_best = percentile_linear(bests, 50.0);
        out.push_back(std::move(s));
    }
    if (rows_out)
        *rows_out = rows;
    return out;
}

SummaryStats summarize(const std::string& set_name, const std::vector<ResultRow>& rows) {
    std::map<std::string, std::vector<double>> bests_per_solver;
    for (const auto& [key, v] : per_instance_best(rows))
        bests_per_solver[key.second].push_back(v);
    SummaryStats out;
    for (auto& [solver, vals] : bests_per_solver) {
        Stats st;
        st.min = *std::min_element(vals.begin(), vals.end());
        st.max = *std::max_element(vals.begin(), vals.end());
        st.q1 = percentile_linear(vals, 25.0);
        st.median = percentile_linear(vals, 50.0);
        st.q3 = percentile_linear(vals, 75.0);
        out[set_name][solver] = st;
    }
    return out;
}

nlohmann::json summary_to_json(const SummaryStats& s) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [set, solvers] : s) {
        nlohmann::json js = nlohmann::json::object();
        for (const auto& [solver, st] : solvers)
            js[solver] = {{"min", st.min},
                          {"q1", st.q1},
                          {"median", st.median},
                          {"q3", st.q3},
                          {"max", st.max}};
        j[set] = std::move(js);
    }
    return j;
}

void write_results_csv(const std::vector<ResultRow>& rows, std::ostream& out) {
    out << "instance,n_vars,n_clauses,density,solver,trial,seed,max2sat_violated,"
           "original_violated,objective,iterations,wall_ms\n";
    for (const auto& r : rows) {
        out << r.instance << ',' << r.n_vars << ',' << r.n_clauses << ',';
        print_number(out, r.density);
        out << ',' << r.solver << ',' << r.trial << ',' << r.seed << ','
            << r.max2sat_violated << ',' << r.original_violated << ',';
        print_number(out, r.objective);
        out << ',' << r.iterations << ',';
        char buf[32];
        snprintf(buf, sizeof(buf), "%.3f", r.wall_ms);
        out << buf << '\n';
    }
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
    out << "density,solver,mean_best,median_best\n";
    for (const auto& r : rows) {
        print_number(out, r.density);
        out << ',' << r.solver << ',';
        print_number(out, r.mean_best);
        out << ',';
        print_number(out, r.median_best);
        out << '\n';
    }
}

std::map<std::string, int> read_reference_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw ParseError("empty reference CSV");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "instance,violated")
        throw ParseError("reference CSV must start with `instance,violated`");
    std::map<std::string, int> out;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const size_t comma = line.find(',');
        if (comma == std::string::npos || comma == 0)
            throw ParseError("reference CSV line " + std::to_string(lineno) +
                             ": expected `instance,violated`");
        const std::string id = line.substr(0, comma);
        int v;
        try {
            size_t used = 0;
            v = std::stoi(line.substr(comma + 1), &used);
            if (used != line.size() - comma - 1)
                throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw ParseError("reference CSV line " + std::to_string(lineno) +
                             ": bad violated count");
        }
        if (v < 0)
            throw ParseError("reference CSV line " + std::to_string(lineno) +
                             ": negative violated count");
        if (!out.emplace(id, v).second)
            throw ParseError("reference CSV line " + std::to_string(lineno) +
                             ": duplicate instance `" + id + "`");
    }
    return out;
}

ReferenceComparison compare_with_reference(const std::vector<ResultRow>& rows,
                                           const std::map<std::string, int>& reference) {
    ReferenceComparison cmp;
    std::set<std::string> seen, unmatched;
    for (const auto& [key, best] : per_instance_best(rows)) {
        seen.insert(key.first);
        const auto it = reference.find(key.first);
        if (it == reference.end()) {
            unmatched.insert(key.first);
            continue;
        }
        cmp.matched.push_back({key.first, key.second, best, it->second});
    }
    cmp.missing_in_reference.assign(unmatched.begin(), unmatched.end());
    for (const auto& [id, _] : reference)
        if (!seen.count(id))
            cmp.missing_in_results.push_back(id);
    return cmp;
}

ExperimentSpec experiment_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw InvalidParam("experiment spec must be a JSON object");
    ExperimentSpec spec;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "name") {
                spec.name = value.get<std::string>();
            } else if (key == "source_dir") {
                spec.source_dir = value.get<std::string>();
            } else if (key == "generator") {
                GeneratorSpec g;
                for (const auto& [gk, gv] : value.items()) {
                    if (gk == "n")
                        g.n = gv.get<int>();
                    else if (gk == "rho_grid")
                        g.rho_grid = gv.get<std::vector<double>>();
                    else if (gk == "m_grid")
                        g.m_grid = gv.get<std::vector<int>>();
                    else if (gk == "instances_per_point")
                        g.instances_per_point = gv.get<int>();
                    else if (gk == "seed")
                        g.seed = gv.get<uint64_t>();
                    else
                        throw InvalidParam("unknown generator key `" + gk + "`");
                }
                spec.generator = std::move(g);
            } else if (key == "solvers") {
                if (!value.is_array() || value.empty())
                    throw InvalidParam("`solvers` must be a non-empty array");
                for (const auto& sj : value)
                    spec.solvers.push_back(params_from_json(sj));
            } else if (key == "trials_per_instance") {
                spec.trials_per_instance = value.get<int>();
            } else if (key == "sample") {
                SampleSpec s;
                for (const auto& [sk, sv] : value.items()) {
                    if (sk == "count")
                        s.count = sv.get<int>();
                    else if (sk == "seed")
                        s.seed = sv.get<uint64_t>();
                    else
                        throw InvalidParam("unknown sample key `" + sk + "`");
                }
                spec.sample = s;
            } else if (key == "workers") {
                spec.workers = value.get<int>();
            } else {
                throw InvalidParam("unknown experiment key `" + key + "`");
            }
        } catch (const nlohmann::json::exception& e) {
            throw InvalidParam("bad value for `" + key + "`: " + e.what());
        }
    }
    if (spec.name.empty()) {
        if (!spec.source_dir.empty())
            spec.name = fs::path(spec.source_dir).filename().string();
        else
            spec.name = "generated";
    }
    return spec;
}

} // namespace satq
