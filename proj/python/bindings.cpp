#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "satq/bench.hpp"
#include "satq/cnf.hpp"
#include "satq/reduction.hpp"
#include "satq/retrieval.hpp"
#include "satq/solvers.hpp"

namespace py = pybind11;
using namespace satq;

namespace {

nlohmann::json parse_json_arg(const std::string& text, const char* what) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParam(std::string(what) + ": " + e.what());
    }
}

std::vector<std::vector<int>> encoded_clauses(const std::vector<Clause>& clauses) {
    std::vector<std::vector<int>> out;
    out.reserve(clauses.size());
    for (const auto& c : clauses) {
        std::vector<int> enc;
        enc.reserve(c.size());
        for (const auto& l : c)
            enc.push_back(l.encoded());
        out.push_back(std::move(enc));
    }
    return out;
}

py::dict retrieval_dict(const RetrievalResult& r) {
    py::list cands;
    for (const auto& c : r.candidates)
        cands.append(py::make_tuple(c.violated, c.satisfied));
    py::dict d;
    d["exact"] = r.exact;
    d["candidates"] = cands;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "3-SAT -> Max 2-SAT -> QUBO/Ising toolkit";

    auto base = py::register_exception<Error>(m, "SatqError");
    py::register_exception<ParseError>(m, "ParseError", base);
    py::register_exception<LengthMismatch>(m, "LengthMismatch", base);
    py::register_exception<NotStrict3Sat>(m, "NotStrict3Sat", base);
    py::register_exception<Infeasible>(m, "Infeasible", base);
    py::register_exception<InvalidParam>(m, "InvalidParam", base);

    py::class_<CnfFormula>(m, "CnfFormula")
        .def_readonly("num_vars", &CnfFormula::num_vars)
        .def_property_readonly("num_clauses", &CnfFormula::num_clauses)
        .def_property_readonly("density", &CnfFormula::density)
        .def_property_readonly("strict_3sat", &CnfFormula::is_strict_3sat)
        .def("clauses", [](const CnfFormula& f) { return encoded_clauses(f.clauses); })
        .def("__repr__", [](const CnfFormula& f) {
            std::ostringstream os;
            os << "CnfFormula(num_vars=" << f.num_vars
               << ", num_clauses=" << f.num_clauses() << ")";
            return os.str();
        });

    py::class_<Max2SatFormula>(m, "Max2SatFormula")
        .def_readonly("num_original_vars", &Max2SatFormula::num_original_vars)
        .def_readonly("num_vars", &Max2SatFormula::num_vars)
        .def_property_readonly("num_clauses", &Max2SatFormula::num_clauses)
        .def_property_readonly("num_original_clauses", &Max2SatFormula::num_original_clauses)
        .def("clauses", [](const Max2SatFormula& g) { return encoded_clauses(g.clauses); })
        .def("__repr__", [](const Max2SatFormula& g) {
            std::ostringstream os;
            os << "Max2SatFormula(num_vars=" << g.num_vars
               << ", num_clauses=" << g.num_clauses() << ")";
            return os.str();
        });

    py::class_<QuboModel>(m, "QuboModel")
        .def_readonly("n", &QuboModel::n)
        .def_readonly("b", &QuboModel::b)
        .def_readonly("c", &QuboModel::c)
        .def("coeff", &QuboModel::coeff, py::arg("i"), py::arg("j"))
        .def_property_readonly("num_entries", &QuboModel::num_entries)
        .def("objective",
             [](const QuboModel& m_, const Assignment& x) { return qubo_objective(m_, x); })
        .def("flip_delta", [](const QuboModel& m_, const Assignment& x,
                              int var) { return flip_delta(m_, x, var); });

    py::class_<IsingModel>(m, "IsingModel")
        .def_readonly("n", &IsingModel::n)
        .def_readonly("h", &IsingModel::h)
        .def_readonly("offset", &IsingModel::offset)
        .def("coeff", &IsingModel::coeff, py::arg("i"), py::arg("j"))
        .def_property_readonly("num_entries", &IsingModel::num_entries)
        .def("energy", [](const IsingModel& m_, const std::vector<int>& spins) {
            SpinVector s(spins.begin(), spins.end());
            return ising_energy(m_, s);
        });

    m.def("parse_dimacs",
          [](const std::string& text, bool strict) {
              return parse_dimacs(text, strict ? ParseMode::strict3sat : ParseMode::lenient);
          },
          py::arg("text"), py::arg("strict") = true);
    m.def("parse_dimacs_file",
          [](const std::string& path, bool strict) {
              return parse_dimacs_file(path,
                                       strict ? ParseMode::strict3sat : ParseMode::lenient);
          },
          py::arg("path"), py::arg("strict") = true);
    m.def("write_dimacs",
          [](const CnfFormula& f) { return write_dimacs(f); });
    m.def("generate_random_3sat", &generate_random_3sat, py::arg("num_vars"),
          py::arg("num_clauses"), py::arg("seed"));
    m.def("evaluate_cnf", [](const CnfFormula& f, const Assignment& a) {
        const EvalCounts c = evaluate_cnf(f, a);
        return py::make_tuple(c.satisfied, c.violated);
    });

    m.def("gadget_convert", &gadget_convert);
    m.def("count_violated", &count_violated);
    m.def("build_qubo", &build_qubo);
    m.def("build_ising", &build_ising);
    m.def("with_optimal_ancillas", &with_optimal_ancillas);
    m.def("write_max2sat", [](const Max2SatFormula& g) {
        std::ostringstream os;
        write_max2sat(g, os);
        return os.str();
    });

    m.def("direct_counts", [](const Max2SatFormula& g, const Assignment& x) {
        const DirectCounts dc = direct_counts(g, x);
        py::dict obs;
        obs["satisfied_d0"] = dc.observation.satisfied_d0;
        obs["groups_d0"] = dc.observation.groups_d0;
        obs["satisfied_d1"] = dc.observation.satisfied_d1;
        obs["groups_d1"] = dc.observation.groups_d1;
        if (dc.observation.case1_d1)
            obs["case1_d1"] = *dc.observation.case1_d1;
        py::dict d;
        d["violated"] = dc.violated;
        d["satisfied"] = dc.satisfied;
        d["observation"] = obs;
        return d;
    });
    m.def("retrieve_counts_d0",
          [](long long total, int groups) { return retrieval_dict(retrieve_counts_d0(total, groups)); },
          py::arg("satisfied_total"), py::arg("groups"));
    m.def("retrieve_counts_d1",
          [](long long total, int groups, std::optional<int> case1) {
              return retrieval_dict(retrieve_counts_d1(total, groups, case1));
          },
          py::arg("satisfied_total"), py::arg("groups"), py::arg("case1") = py::none());
    m.def("retrieve_counts_mixed",
          [](long long satisfied_d0, int groups_d0, long long satisfied_d1, int groups_d1,
             std::optional<int> case1_d1) {
              GadgetObservation obs;
              obs.satisfied_d0 = satisfied_d0;
              obs.groups_d0 = groups_d0;
              obs.satisfied_d1 = satisfied_d1;
              obs.groups_d1 = groups_d1;
              obs.case1_d1 = case1_d1;
              return retrieval_dict(retrieve_counts_mixed(obs));
          },
          py::arg("satisfied_d0"), py::arg("groups_d0"), py::arg("satisfied_d1"),
          py::arg("groups_d1"), py::arg("case1_d1") = py::none());

    m.def("preset_names", &preset_names);
    m.def("solve",
          [](const Max2SatFormula& g, const std::string& params_json, bool timing) {
              const SolverParams p =
                  params_from_json(parse_json_arg(params_json, "params_json"));
              SolveReport r;
              {
                  py::gil_scoped_release release;
                  r = run_solver(g, p);
              }
              return report_to_json(r, timing).dump();
          },
          py::arg("formula"), py::arg("params_json") = "{}", py::arg("timing") = false,
          "Run a solver; params_json is a SolverParams JSON object, returns the "
          "report as a JSON string");
    m.def("bench",
          [](const std::string& spec_json) {
              const ExperimentSpec spec =
                  experiment_from_json(parse_json_arg(spec_json, "spec_json"));
              std::vector<ResultRow> rows;
              {
                  py::gil_scoped_release release;
                  rows = run_experiment(spec);
              }
              std::ostringstream csv;
              write_results_csv(rows, csv);
              return py::make_tuple(csv.str(),
                                    summary_to_json(summarize(spec.name, rows)).dump());
          },
          py::arg("spec_json"),
          "Run an experiment spec; returns (rows_csv, summary_json)");
}
