// Regenerates the committed fixtures under data/:
//   data/uf50/  satisfiable random 3-SAT, n=50 m=218 (DPLL-filtered)
//   data/pret/  3-regular parity instances, 60 vars 160 clauses, UNSAT with
//               minimum violated count exactly 1
// Deterministic: same flags -> byte-identical files.

#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "satq/cnf.hpp"
#include "satq/rng.hpp"

namespace fs = std::filesystem;
using namespace satq;

namespace {

// Plain DPLL with unit propagation; plenty for 50-variable filtering.
// val[v] is 0 (unassigned) or the forced sign.
bool dpll(const std::vector<Clause>& clauses, std::vector<int> val) {
    for (;;) {
        int unit = 0;
        bool all_satisfied = true;
        for (const auto& c : clauses) {
            bool satisfied = false;
            int unassigned = 0, last_free = 0;
            for (const auto& l : c) {
                const int v = val[l.var];
                if (v == 0) {
                    ++unassigned;
                    last_free = l.encoded();
                } else if (v == l.sign) {
                    satisfied = true;
                    break;
                }
            }
            if (satisfied)
                continue;
            if (unassigned == 0)
                return false;
            all_satisfied = false;
            if (unassigned == 1) {
                unit = last_free;
                break;
            }
        }
        if (all_satisfied)
            return true;
        if (unit == 0)
            break;
        val[std::abs(unit)] = unit > 0 ? +1 : -1;
    }
    int branch = 0;
    for (size_t v = 1; v < val.size() && branch == 0; ++v)
        if (val[v] == 0)
            branch = static_cast<int>(v);
    for (int s : {+1, -1}) {
        val[branch] = s;
        if (dpll(clauses, val))
            return true;
    }
    return false;
}

bool satisfiable(const CnfFormula& f) {
    return dpll(f.clauses, std::vector<int>(f.num_vars + 1, 0));
}

// Cubic circulant graph on `nodes` vertices: ring edges (i, i+1) plus the
// diameter chords (i, i+nodes/2). One XOR-3 constraint per vertex over its
// incident edges; all parities even except `odd_node`. The parity sum is odd
// while each edge feeds exactly two constraints, so the system is
// unsatisfiable; the all-zero edge assignment violates exactly one of the
// 4*nodes clauses, so the optimum is exactly 1.
CnfFormula parity_instance(int nodes, int odd_node, uint64_t seed) {
    const int half = nodes / 2;
    std::vector<std::array<int, 3>> incident(nodes);
    std::vector<int> degree(nodes, 0);
    int edges = 0;
    auto add_edge = [&](int a, int b) {
        incident[a][degree[a]++] = edges;
        incident[b][degree[b]++] = edges;
        ++edges;
    };
    for (int i = 0; i < nodes; ++i)
        add_edge(i, (i + 1) % nodes);
    for (int i = 0; i < half; ++i)
        add_edge(i, i + half);

    Rng rng(seed);
    std::vector<int> perm(edges);
    std::iota(perm.begin(), perm.end(), 1);
    for (int i = edges - 1; i > 0; --i)
        std::swap(perm[i], perm[rng.bounded(static_cast<uint64_t>(i) + 1)]);
    std::vector<int> flip(edges);
    for (int e = 0; e < edges; ++e)
        flip[e] = rng.coin() ? -1 : +1;

    CnfFormula f;
    f.num_vars = edges;
    for (int v = 0; v < nodes; ++v) {
        const int rhs = v == odd_node ? 1 : 0;
        for (int p = 0; p < 8; ++p) {
            const int p1 = p & 1, p2 = (p >> 1) & 1, p3 = (p >> 2) & 1;
            if ((p1 ^ p2 ^ p3) == rhs)
                continue; // allowed pattern
            Clause c;
            const int pat[3] = {p1, p2, p3};
            for (int t = 0; t < 3; ++t) {
                const int e = incident[v][t];
                // renaming variables and negating all occurrences of a
                // variable both preserve the per-assignment violated count
                c.push_back({perm[e], (pat[t] ? -1 : +1) * flip[e]});
            }
            f.clauses.push_back(std::move(c));
        }
    }
    for (size_t i = f.clauses.size() - 1; i > 0; --i)
        std::swap(f.clauses[i], f.clauses[rng.bounded(i + 1)]);
    return f;
}

void write_file(const fs::path& path, const std::string& comment, const CnfFormula& f) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        std::cerr << "cannot write " << path << '\n';
        std::exit(1);
    }
    out << "c " << comment << '\n';
    write_dimacs(f, out);
}

} // namespace

int main(int argc, char** argv) {
    std::string out_dir = "data";
    int uf_count = 20, pret_count = 4;
    uint64_t base_seed = 101;
    for (int i = 1; i < argc; ++i) {
        const std::string a = argv[i];
        auto next = [&]() -> std::string {
            if (++i >= argc) {
                std::cerr << "missing value after " << a << '\n';
                std::exit(2);
            }
            return argv[i];
        };
        if (a == "--out")
            out_dir = next();
        else if (a == "--uf50")
            uf_count = std::stoi(next());
        else if (a == "--pret")
            pret_count = std::stoi(next());
        else if (a == "--seed")
            base_seed = std::stoull(next());
        else {
            std::cerr << "usage: datagen [--out DIR] [--uf50 N] [--pret N] [--seed S]\n";
            return 2;
        }
    }

    fs::create_directories(fs::path(out_dir) / "uf50");
    fs::create_directories(fs::path(out_dir) / "pret");

    int written = 0;
    uint64_t seed = base_seed;
    while (written < uf_count) {
        const CnfFormula f = generate_random_3sat(50, 218, seed);
        if (satisfiable(f)) {
            ++written;
            char name[32];
            snprintf(name, sizeof(name), "uf50-%02d.cnf", written);
            char comment[96];
            snprintf(comment, sizeof(comment),
                     "satisfiable random 3-SAT, n=50 m=218, generator seed %llu",
                     static_cast<unsigned long long>(seed));
            write_file(fs::path(out_dir) / "uf50" / name, comment, f);
            std::cout << name << " <- seed " << seed << '\n';
        }
        ++seed;
    }

    for (int i = 0; i < pret_count; ++i) {
        const int nodes = 40;
        const int odd_node = (7 * (i + 1)) % nodes;
        const uint64_t pseed = base_seed + 1000 + i;
        const CnfFormula f = parity_instance(nodes, odd_node, pseed);

        // sanity: unsatisfiable, and some assignment violates exactly one clause
        if (satisfiable(f)) {
            std::cerr << "parity instance " << i << " is satisfiable, aborting\n";
            return 1;
        }
        int best = f.num_clauses();
        {
            Assignment x(f.num_vars, 0);
            // undo the gauge: the pre-gauge all-zero assignment
            Rng rng(pseed);
            std::vector<int> perm(f.num_vars);
            std::iota(perm.begin(), perm.end(), 1);
            for (int k = f.num_vars - 1; k > 0; --k)
                std::swap(perm[k], perm[rng.bounded(static_cast<uint64_t>(k) + 1)]);
            for (int e = 0; e < f.num_vars; ++e)
                x[perm[e] - 1] = rng.coin() ? 1 : 0;
            best = evaluate_cnf(f, x).violated;
        }
        if (best != 1) {
            std::cerr << "parity witness violates " << best << " clauses, aborting\n";
            return 1;
        }
        char name[32];
        snprintf(name, sizeof(name), "pret60-%02d.cnf", i + 1);
        char comment[96];
        snprintf(comment, sizeof(comment),
                 "3-regular parity instance, unsatisfiable, optimum 1 (seed %llu)",
                 static_cast<unsigned long long>(pseed));
        write_file(fs::path(out_dir) / "pret" / name, comment, f);
        std::cout << name << " <- seed " << pseed << '\n';
    }
    return 0;
}
