#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "satq/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code;
    std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = satq::run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / "satq-cli-test") {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name, const std::string& content = "") const {
        const fs::path p = path / name;
        if (!content.empty())
            std::ofstream(p) << content;
        return p.string();
    }
};

} // namespace

TEST_CASE("gen writes DIMACS with the requested header") {
    const CliRun r = cli({"gen", "-n", "50", "-m", "218", "--seed", "1"});
    CHECK(r.code == 0);
    CHECK(r.out.substr(0, 13) == "p cnf 50 218\n");
    const CliRun again = cli({"gen", "-n", "50", "-m", "218", "--seed", "1"});
    CHECK(again.out == r.out);
    const CliRun other = cli({"gen", "-n", "50", "-m", "218", "--seed", "2"});
    CHECK(other.out != r.out);
}

TEST_CASE("gen usage and runtime errors") {
    CHECK(cli({"gen", "-n", "50"}).code == 2);            // -m missing
    CHECK(cli({"gen", "-n", "2", "-m", "1"}).code == 2);  // n < 3 rejected as usage
    CHECK(cli({}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    const CliRun help = cli({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("gen") != std::string::npos);
}

TEST_CASE("convert emits the three export formats") {
    TempDir tmp;
    const std::string one = tmp.file("one.cnf", "p cnf 3 1\n1 2 3 0\n");

    const CliRun m2s = cli({"convert", one, "--to", "max2sat"});
    CHECK(m2s.code == 0);
    CHECK(m2s.out.find("c max2sat orig_vars=3 orig_clauses=1\n") != std::string::npos);
    CHECK(m2s.out.find("p cnf 4 10\n") != std::string::npos);

    const CliRun qubo = cli({"convert", one, "--to", "qubo"});
    CHECK(qubo.code == 0);
    CHECK(qubo.out.substr(0, 7) == "qubo 4\n");

    const CliRun ising = cli({"convert", one, "--to", "ising"});
    CHECK(ising.code == 0);
    CHECK(ising.out.substr(0, 8) == "ising 4\n");

    CHECK(cli({"convert", one, "--to", "maxcut"}).code == 2);
    CHECK(cli({"convert", tmp.file("missing.cnf"), "--to", "qubo"}).code == 1);
    const std::string bad = tmp.file("bad.cnf", "p cnf 3 1\n1 2 0\n");
    CHECK(cli({"convert", bad, "--to", "qubo"}).code == 1); // not strict 3-SAT
}

TEST_CASE("solve prints a full report and honors --output") {
    TempDir tmp;
    // Trivially satisfiable: every clause all-positive.
    const std::string sat = tmp.file("sat.cnf", "p cnf 4 2\n1 2 3 0\n2 3 4 0\n");
    const CliRun r =
        cli({"solve", sat, "--method", "ga_ls", "--seed", "1", "--budget", "2000"});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["method"] == "ga_ls");
    CHECK(j["original_violated"] == 0);
    CHECK(j["objective"] == 2.0 * j["max2sat_violated"].get<double>());
    CHECK(j["retrieval"]["agrees"] == true);
    CHECK(j["instance"] == sat);
    CHECK(!j.contains("wall_ms"));
    CHECK(j["bits"].get<std::string>().size() == 6);

    const std::string out_path = tmp.file("report.json");
    const CliRun f = cli({"solve", sat, "--method", "ga_ls", "--seed", "1", "--budget",
                          "2000", "-o", out_path});
    CHECK(f.code == 0);
    CHECK(f.out.empty());
    std::ifstream in(out_path);
    std::stringstream body;
    body << in.rdbuf();
    CHECK(body.str() == r.out);

    const CliRun timed = cli({"solve", sat, "--method", "ga_ls", "--seed", "1",
                              "--budget", "2000", "--timing"});
    CHECK(json::parse(timed.out).contains("wall_ms"));
}

TEST_CASE("solve determinism across repetitions") {
    TempDir tmp;
    const CliRun gen = cli({"gen", "-n", "12", "-m", "40", "--seed", "3", "-o",
                            tmp.file("i.cnf")});
    REQUIRE(gen.code == 0);
    std::string first;
    for (int k = 0; k < 10; ++k) {
        const CliRun r = cli({"solve", tmp.file("i.cnf"), "--method", "sa", "--seed",
                              "7", "--budget", "3000"});
        REQUIRE(r.code == 0);
        if (k == 0)
            first = r.out;
        else
            CHECK(r.out == first);
    }
}

TEST_CASE("solve presets and parameter files") {
    TempDir tmp;
    const CliRun list = cli({"solve", "--list-presets"});
    CHECK(list.code == 0);
    CHECK(list.out == "default-sa\ndefault-tabu\ndefault-ga\ndefault-bsb\npaper-bsb\n");

    const std::string sat = tmp.file("s.cnf", "p cnf 3 1\n1 2 3 0\n");
    const std::string params =
        tmp.file("p.json", R"({"method":"tabu","iteration_budget":50,"seed":4})");
    const CliRun r = cli({"solve", sat, "--params", params});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["method"] == "tabu");
    CHECK(j["seed"] == 4);

    // overrides win over the preset
    const CliRun o = cli({"solve", sat, "--preset", "default-sa", "--budget", "10",
                          "--seed", "9"});
    const json jo = json::parse(o.out);
    CHECK(jo["method"] == "sa");
    CHECK(jo["iterations"] == 10);
    CHECK(jo["seed"] == 9);

    CHECK(cli({"solve", sat, "--preset", "nope"}).code == 2);
    CHECK(cli({"solve", sat, "--preset", "default-sa", "--params", params}).code == 2);
    CHECK(cli({"solve", sat, "--method", "sa", "--time-ms", "0"}).code == 2);
    CHECK(cli({"solve"}).code == 2);
    const std::string badp = tmp.file("bad.json", R"({"tenure": 3})");
    CHECK(cli({"solve", sat, "--params", badp}).code == 2);
}

TEST_CASE("retrieve from totals, with and without case counts") {
    const CliRun uniq = cli({"retrieve", "--satisfied-d0", "35", "--groups-d0", "5"});
    REQUIRE(uniq.code == 0);
    const json j = json::parse(uniq.out);
    CHECK(j["retrieval"]["exact"] == true);
    REQUIRE(j["retrieval"]["candidates"].size() == 1);
    CHECK(j["retrieval"]["candidates"][0]["violated"] == 0);
    CHECK(j["retrieval"]["candidates"][0]["satisfied"] == 5);

    const CliRun amb = cli({"retrieve", "--satisfied-d1", "18", "--groups-d1", "3"});
    REQUIRE(amb.code == 0);
    const json a = json::parse(amb.out);
    CHECK(a["retrieval"]["exact"] == false);
    REQUIRE(a["retrieval"]["candidates"].size() == 2);
    CHECK(a["retrieval"]["candidates"][0]["violated"] == 0);
    CHECK(a["retrieval"]["candidates"][0]["satisfied"] == 3);
    CHECK(a["retrieval"]["candidates"][1]["violated"] == 1);
    CHECK(a["retrieval"]["candidates"][1]["satisfied"] == 2);
    CHECK(a["retrieval"]["candidates"][1]["d1_split"]["one_true"] == 0);
    CHECK(a["retrieval"]["candidates"][1]["d1_split"]["two_or_three_true"] == 2);

    const CliRun fixed = cli({"retrieve", "--satisfied-d1", "18", "--groups-d1", "3",
                              "--case1-d1", "1"});
    const json f = json::parse(fixed.out);
    CHECK(f["retrieval"]["exact"] == true);
    CHECK(f["retrieval"]["candidates"][0]["violated"] == 1);

    CHECK(cli({"retrieve", "--satisfied-d0", "29", "--groups-d0", "5"}).code == 1);
    CHECK(cli({"retrieve"}).code == 2);
}

TEST_CASE("retrieve from files agrees with the oracle") {
    TempDir tmp;
    const std::string cnf = tmp.file("f.cnf", "p cnf 3 2\n1 2 3 0\n-1 -2 -3 0\n");
    const std::string m2s = tmp.file("f.m2s");
    REQUIRE(cli({"convert", cnf, "--to", "max2sat", "-o", m2s}).code == 0);

    // x = (1,1,0); optimal ancillas: group 1 two-true -> 0, group 2 one-true -> 0
    const std::string assign = tmp.file("x.txt", "1 1 0 0 0\n");
    const CliRun r = cli({"retrieve", "--m2s", m2s, "--assignment", assign});
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["oracle"]["violated"] == 0);
    CHECK(j["oracle"]["satisfied"] == 2);
    CHECK(j["agrees"] == true);
    CHECK(j["observation"]["groups_d0"] == 2);
    CHECK(j["observation"]["satisfied_d0"] == 14);

    CHECK(cli({"retrieve", "--m2s", m2s}).code == 2);
    CHECK(cli({"retrieve", "--m2s", m2s, "--assignment", assign, "--satisfied-d0",
               "1"}).code == 2);
    const std::string shortx = tmp.file("short.txt", "101\n");
    CHECK(cli({"retrieve", "--m2s", m2s, "--assignment", shortx}).code == 1);
    const std::string junk = tmp.file("junk.txt", "10a01\n");
    CHECK(cli({"retrieve", "--m2s", m2s, "--assignment", junk}).code == 1);
}

TEST_CASE("bench runs a generator spec end to end") {
    TempDir tmp;
    const std::string spec = tmp.file("spec.json", R"({
      "name": "smoke",
      "generator": {"n": 8, "rho_grid": [1.0, 2.0], "instances_per_point": 2, "seed": 3},
      "solvers": [{"method": "tabu", "iteration_budget": 40},
                  {"method": "ga_ls", "iteration_budget": 400}],
      "trials_per_instance": 2,
      "workers": 2
    })");
    const std::string rows = tmp.file("rows.csv");
    const std::string summary = tmp.file("summary.json");
    const CliRun r = cli({"bench", "--spec", spec, "-o", rows, "--summary", summary});
    REQUIRE(r.code == 0);

    std::ifstream rf(rows);
    std::string header;
    std::getline(rf, header);
    CHECK(header == "instance,n_vars,n_clauses,density,solver,trial,seed,"
                    "max2sat_violated,original_violated,objective,iterations,wall_ms");
    int lines = 0;
    std::string line;
    while (std::getline(rf, line))
        if (!line.empty())
            ++lines;
    CHECK(lines == 16);

    std::ifstream sf(summary);
    json s;
    sf >> s;
    CHECK(s.contains("smoke"));
    CHECK(s["smoke"].contains("tabu"));
    CHECK(s["smoke"].contains("ga_ls"));
    for (const char* k : {"min", "max", "q1", "q3", "median"})
        CHECK(s["smoke"]["ga_ls"].contains(k));

    // identical argv -> identical bytes (wall_ms zeroed without --timing)
    const std::string rows2 = tmp.file("rows2.csv");
    REQUIRE(cli({"bench", "--spec", spec, "-o", rows2, "--summary",
                 tmp.file("s2.json")}).code == 0);
    std::ifstream a(rows), b(rows2);
    std::stringstream sa, sb;
    sa << a.rdbuf();
    sb << b.rdbuf();
    CHECK(sa.str() == sb.str());
}

TEST_CASE("bench sweep and reference comparison") {
    TempDir tmp;
    const std::string spec = tmp.file("spec.json", R"({
      "generator": {"n": 6, "rho_grid": [1.0, 3.0], "instances_per_point": 2, "seed": 1},
      "solvers": [{"method": "ga_ls", "iteration_budget": 300}],
      "trials_per_instance": 1
    })");
    const std::string sweep = tmp.file("sweep.csv");
    const std::string rows = tmp.file("rows.csv");
    REQUIRE(cli({"bench", "--spec", spec, "--sweep", sweep, "-o", rows}).code == 0);
    std::ifstream swf(sweep);
    std::string header;
    std::getline(swf, header);
    CHECK(header == "density,solver,mean_best,median_best");
    int sweep_rows = 0;
    std::string line;
    while (std::getline(swf, line))
        if (!line.empty())
            ++sweep_rows;
    CHECK(sweep_rows == 2); // 2 grid points x 1 solver

    // reference comparison against two of the generated ids
    const std::string ref = tmp.file("ref.csv",
                                     "instance,violated\nrnd-n006-m0006-i00,0\nstranger,1\n");
    const std::string cmp = tmp.file("cmp.csv");
    const CliRun rr = cli({"bench", "--spec", spec, "-o", tmp.file("r2.csv"),
                           "--reference", ref, "--compare", cmp});
    REQUIRE(rr.code == 0);
    CHECK(rr.err.find("stranger") != std::string::npos);
    std::ifstream cf(cmp);
    std::getline(cf, header);
    CHECK(header == "instance,solver,best,reference");
    std::getline(cf, line);
    CHECK(line.substr(0, 19) == "rnd-n006-m0006-i00,");

    CHECK(cli({"bench", "--spec", spec, "--compare", cmp}).code == 2); // needs --reference
    CHECK(cli({"bench", "--spec", tmp.file("nope.json")}).code == 1);
    const std::string badspec = tmp.file("bad.json", R"({"solvers": []})");
    CHECK(cli({"bench", "--spec", badspec}).code == 2);
}
