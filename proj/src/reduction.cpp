#include "satq/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace satq {

Max2SatFormula gadget_convert(const CnfFormula& f) {
    for (size_t k = 0; k < f.clauses.size(); ++k)
        if (f.clauses[k].size() != 3)
            throw NotStrict3Sat("clause " + std::to_string(k + 1) + " has " +
                                std::to_string(f.clauses[k].size()) +
                                " literals; the gadget needs exactly 3");

    const int n = f.num_vars;
    const int m = f.num_clauses();
    Max2SatFormula g;
    g.num_original_vars = n;
    g.num_vars = n + m;
    g.clauses.reserve(10 * static_cast<size_t>(m));
    g.groups.reserve(m);

    for (int k = 0; k < m; ++k) {
        const Literal l1 = f.clauses[k][0];
        const Literal l2 = f.clauses[k][1];
        const Literal l3 = f.clauses[k][2];
        const Literal d{n + k + 1, +1};

        GadgetGroup group;
        group.original_clause_index = k;
        group.ancillary_var = d.var;
        const Clause templ[10] = {
            {l1},
            {l2},
            {l3},
            {d},
            {l1.negated(), l2.negated()},
            {l1.negated(), l3.negated()},
            {l2.negated(), l3.negated()},
            {l1, d.negated()},
            {l2, d.negated()},
            {l3, d.negated()},
        };
        for (int t = 0; t < 10; ++t) {
            group.clause_indices[t] = static_cast<int>(g.clauses.size());
            g.clauses.push_back(templ[t]);
        }
        g.groups.push_back(group);
    }
    return g;
}

int count_violated(const Max2SatFormula& g, const Assignment& x) {
    if (static_cast<int>(x.size()) != g.num_vars)
        throw LengthMismatch("assignment has " + std::to_string(x.size()) +
                             " bits, formula has " + std::to_string(g.num_vars) +
                             " variables");
    int violated = 0;
    for (const auto& c : g.clauses)
        if (!clause_true(c, x))
            ++violated;
    return violated;
}

namespace {

// Accumulate symmetric off-diagonal entries, then merge duplicates and drop
// exact zeros.
struct CooBuilder {
    std::vector<std::tuple<int, int, double>> entries;

    void add(int i, int j, double v) {
        entries.emplace_back(i, j, v);
        entries.emplace_back(j, i, v);
    }

    std::vector<std::vector<std::pair<int, double>>> build(int n) {
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) {
                      return std::tie(std::get<0>(a), std::get<1>(a)) <
                             std::tie(std::get<0>(b), std::get<1>(b));
                  });
        std::vector<std::vector<std::pair<int, double>>> adj(n);
        size_t i = 0;
        while (i < entries.size()) {
            const int r = std::get<0>(entries[i]);
            const int c = std::get<1>(entries[i]);
            double v = 0.0;
            while (i < entries.size() && std::get<0>(entries[i]) == r &&
                   std::get<1>(entries[i]) == c)
                v += std::get<2>(entries[i++]);
            if (v != 0.0)
                adj[r].emplace_back(c, v);
        }
        return adj;
    }
};

double adjacency_coeff(const std::vector<std::vector<std::pair<int, double>>>& adj, int i,
                       int j) {
    for (const auto& [k, v] : adj[i])
        if (k == j)
            return v;
    return 0.0;
}

int adjacency_entries(const std::vector<std::vector<std::pair<int, double>>>& adj) {
    int total = 0;
    for (const auto& row : adj)
        total += static_cast<int>(row.size());
    return total;
}

} // namespace

double QuboModel::coeff(int i, int j) const { return adjacency_coeff(adj, i, j); }
int QuboModel::num_entries() const { return adjacency_entries(adj); }
double IsingModel::coeff(int i, int j) const { return adjacency_coeff(adj, i, j); }
int IsingModel::num_entries() const { return adjacency_entries(adj); }

QuboModel build_qubo(const Max2SatFormula& g) {
    QuboModel m;
    m.n = g.num_vars;
    m.b.assign(m.n, 0.0);
    CooBuilder coo;
    for (const auto& cl : g.clauses) {
        if (cl.size() == 2) {
            const int j1 = cl[0].var - 1, j2 = cl[1].var - 1;
            const double v1 = cl[0].sign, v2 = cl[1].sign;
            coo.add(j1, j2, 2.0 * v1 * v2);
            m.b[j1] += -v1 * (1.0 + v2);
            m.b[j2] += -v2 * (1.0 + v1);
            m.c += (1.0 + v1) * (1.0 + v2) / 2.0;
        } else if (cl.size() == 1) {
            const int j = cl[0].var - 1;
            const double v = cl[0].sign;
            m.b[j] += -2.0 * v;
            m.c += 1.0 + v;
        } else {
            throw NotStrict3Sat("Max 2-SAT clause with " + std::to_string(cl.size()) +
                                " literals");
        }
    }
    m.adj = coo.build(m.n);
    return m;
}

double qubo_objective(const QuboModel& m, const Assignment& x) {
    if (static_cast<int>(x.size()) != m.n)
        throw LengthMismatch("assignment has " + std::to_string(x.size()) +
                             " bits, model has " + std::to_string(m.n) + " variables");
    double quad = 0.0, lin = 0.0;
    for (int i = 0; i < m.n; ++i) {
        if (!x[i])
            continue;
        lin += m.b[i];
        for (const auto& [j, q] : m.adj[i])
            if (x[j])
                quad += q;
    }
    return 0.5 * quad + lin + m.c;
}

double flip_delta(const QuboModel& m, const Assignment& x, int var) {
    if (static_cast<int>(x.size()) != m.n)
        throw LengthMismatch("assignment has " + std::to_string(x.size()) +
                             " bits, model has " + std::to_string(m.n) + " variables");
    if (var < 1 || var > m.n)
        throw InvalidParam("variable index " + std::to_string(var) + " out of range 1.." +
                           std::to_string(m.n));
    const int i = var - 1;
    double s = m.b[i];
    for (const auto& [j, q] : m.adj[i])
        if (x[j])
            s += q;
    return (1.0 - 2.0 * x[i]) * s;
}

IsingModel build_ising(const Max2SatFormula& g) {
    IsingModel m;
    m.n = g.num_vars;
    m.h.assign(m.n, 0.0);
    CooBuilder coo;
    for (const auto& cl : g.clauses) {
        if (cl.size() == 2) {
            const int j1 = cl[0].var - 1, j2 = cl[1].var - 1;
            const double v1 = cl[0].sign, v2 = cl[1].sign;
            coo.add(j1, j2, v1 * v2);
            m.h[j1] += -v1;
            m.h[j2] += -v2;
            m.offset += 0.25;
        } else if (cl.size() == 1) {
            const int j = cl[0].var - 1;
            const double v = cl[0].sign;
            m.h[j] += -2.0 * v;
            m.offset += 0.5;
        } else {
            throw NotStrict3Sat("Max 2-SAT clause with " + std::to_string(cl.size()) +
                                " literals");
        }
    }
    m.adj = coo.build(m.n);
    return m;
}

double ising_energy(const IsingModel& m, const SpinVector& s) {
    if (static_cast<int>(s.size()) != m.n)
        throw LengthMismatch("spin vector has " + std::to_string(s.size()) +
                             " entries, model has " + std::to_string(m.n) + " variables");
    double pair = 0.0, field = 0.0;
    for (int i = 0; i < m.n; ++i) {
        field += m.h[i] * s[i];
        for (const auto& [j, jij] : m.adj[i])
            pair += jij * s[i] * s[j];
    }
    // adj holds both directions; halve the pair sum to get sum over i<j.
    return 0.25 * (0.5 * pair + field) + m.offset;
}

SpinVector spins_from_bits(const Assignment& x) {
    SpinVector s(x.size());
    for (size_t i = 0; i < x.size(); ++i)
        s[i] = x[i] ? +1 : -1;
    return s;
}

Assignment bits_from_spins(const SpinVector& s) {
    Assignment x(s.size());
    for (size_t i = 0; i < s.size(); ++i)
        x[i] = s[i] > 0 ? 1 : 0;
    return x;
}

namespace {

// Coefficients from gadget models are small integers; print those without a
// decimal point so exports are stable and diff-friendly.
void print_coeff(std::ostream& out, double v) {
    if (v == std::floor(v) && std::abs(v) < 1e15) {
        out << static_cast<long long>(v);
    } else {
        char buf[32];
        snprintf(buf, sizeof(buf), "%.17g", v);
        out << buf;
    }
}

void write_model(std::ostream& out, const char* tag, int n,
                 const std::vector<std::vector<std::pair<int, double>>>& adj,
                 const std::vector<double>& lin, const char* lin_tag, double constant) {
    out << tag << ' ' << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (const auto& [j, v] : adj[i]) {
            if (j <= i)
                continue;
            out << (i + 1) << ' ' << (j + 1) << ' ';
            print_coeff(out, v);
            out << '\n';
        }
    }
    for (int i = 0; i < n; ++i) {
        if (lin[i] == 0.0)
            continue;
        out << lin_tag << ' ' << (i + 1) << ' ';
        print_coeff(out, lin[i]);
        out << '\n';
    }
    out << "c ";
    print_coeff(out, constant);
    out << '\n';
}

} // namespace

void write_qubo(const QuboModel& m, std::ostream& out) {
    write_model(out, "qubo", m.n, m.adj, m.b, "b", m.c);
}

void write_ising(const IsingModel& m, std::ostream& out) {
    write_model(out, "ising", m.n, m.adj, m.h, "h", m.offset);
}

void write_max2sat(const Max2SatFormula& g, std::ostream& out) {
    out << "c max2sat orig_vars=" << g.num_original_vars
        << " orig_clauses=" << g.num_original_clauses() << '\n';
    out << "p cnf " << g.num_vars << ' ' << g.num_clauses() << '\n';
    for (const auto& c : g.clauses) {
        for (const auto& l : c)
            out << l.encoded() << ' ';
        out << "0\n";
    }
}

Max2SatFormula read_max2sat(std::istream& in) {
    std::string line;
    int n = -1, m = -1;
    // marker comment must precede the DIMACS body
    std::streampos body_start = in.tellg();
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue;
        if (tok == "c") {
            std::string kind;
            if (ls >> kind && kind == "max2sat") {
                std::string kv;
                while (ls >> kv) {
                    if (kv.rfind("orig_vars=", 0) == 0)
                        n = std::stoi(kv.substr(10));
                    else if (kv.rfind("orig_clauses=", 0) == 0)
                        m = std::stoi(kv.substr(13));
                }
            }
            body_start = in.tellg();
            continue;
        }
        break;
    }
    if (n < 1 || m < 0)
        throw ParseError("missing `c max2sat orig_vars=N orig_clauses=M` marker");
    in.clear();
    in.seekg(body_start);
    CnfFormula body = parse_dimacs(in, ParseMode::lenient);
    if (body.num_vars != n + m)
        throw ParseError("max2sat body declares " + std::to_string(body.num_vars) +
                         " variables, marker implies " + std::to_string(n + m));
    if (body.num_clauses() != 10 * m)
        throw ParseError("max2sat body has " + std::to_string(body.num_clauses()) +
                         " clauses, marker implies " + std::to_string(10 * m));

    Max2SatFormula g;
    g.num_original_vars = n;
    g.num_vars = n + m;
    g.clauses = std::move(body.clauses);
    g.groups.reserve(m);
    for (int k = 0; k < m; ++k) {
        GadgetGroup group;
        group.original_clause_index = k;
        group.ancillary_var = n + k + 1;
        for (int t = 0; t < 10; ++t)
            group.clause_indices[t] = 10 * k + t;
        g.groups.push_back(group);
    }
    // sanity-check the canonical layout: unit ancilla clause at slot 3
    for (const auto& group : g.groups) {
        const Clause& dc = g.clauses[group.clause_indices[3]];
        if (dc.size() != 1 || dc[0].var != group.ancillary_var || dc[0].sign != +1)
            throw ParseError("clause layout does not match the gadget template (group " +
                             std::to_string(group.original_clause_index + 1) + ")");
    }
    return g;
}

} // namespace satq
