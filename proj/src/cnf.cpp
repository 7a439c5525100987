#include "satq/cnf.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include "satq/rng.hpp"

namespace satq {

bool CnfFormula::is_strict_3sat() const {
    for (const auto& c : clauses)
        if (c.size() != 3)
            return false;
    return true;
}

namespace {

void check_clause(const Clause& c, int num_vars, ParseMode mode, size_t index) {
    const std::string where = "clause " + std::to_string(index + 1);
    if (c.empty())
        throw ParseError("empty " + where);
    if (c.size() > 3)
        throw ParseError(where + " has " + std::to_string(c.size()) + " literals (max 3)");
    if (mode == ParseMode::strict3sat && c.size() != 3)
        throw ParseError(where + " has " + std::to_string(c.size()) +
                         " literals (strict 3-SAT mode requires exactly 3)");
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i].var < 1 || c[i].var > num_vars)
            throw ParseError("variable " + std::to_string(c[i].var) + " out of range in " +
                             where + " (header declares " + std::to_string(num_vars) + ")");
        for (size_t j = i + 1; j < c.size(); ++j)
            if (c[i].var == c[j].var)
                throw ParseError("duplicate variable " + std::to_string(c[i].var) + " in " +
                                 where);
    }
}

} // namespace

CnfFormula parse_dimacs(std::istream& in, ParseMode mode) {
    CnfFormula f;
    int declared_clauses = -1;
    bool saw_header = false;
    bool done = false;
    Clause current;

    std::string line;
    while (!done && std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tok;
        if (!(ls >> tok))
            continue; // blank line
        if (tok == "c" || tok[0] == 'c') {
            continue;
        }
        if (tok == "p") {
            if (saw_header)
                throw ParseError("duplicate `p` header line");
            std::string fmt;
            if (!(ls >> fmt) || fmt != "cnf")
                throw ParseError("malformed header: expected `p cnf N M`");
            if (!(ls >> f.num_vars >> declared_clauses) || f.num_vars < 1 ||
                declared_clauses < 0)
                throw ParseError("malformed header: expected `p cnf N M`");
            saw_header = true;
            continue;
        }
        if (!saw_header)
            throw ParseError("clause data before `p cnf` header");
        // clause integers; first token already read
        do {
            if (tok == "%") { // SATLIB end-of-file marker
                done = true;
                break;
            }
            int lit;
            try {
                size_t pos = 0;
                lit = std::stoi(tok, &pos);
                if (pos != tok.size())
                    throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw ParseError("unexpected token `" + tok + "` in clause data");
            }
            if (lit == 0) {
                check_clause(current, f.num_vars, mode, f.clauses.size());
                f.clauses.push_back(std::move(current));
                current.clear();
            } else {
                current.push_back(Literal::from_encoded(lit));
            }
        } while (ls >> tok);
    }
    if (!saw_header)
        throw ParseError("missing `p cnf` header");
    if (!current.empty())
        throw ParseError("unterminated clause at end of input (missing 0)");
    if (f.num_clauses() != declared_clauses)
        throw ParseError("clause count mismatch: header declares " +
                         std::to_string(declared_clauses) + ", found " +
                         std::to_string(f.num_clauses()));
    return f;
}

CnfFormula parse_dimacs(const std::string& text, ParseMode mode) {
    std::istringstream in(text);
    return parse_dimacs(in, mode);
}

CnfFormula parse_dimacs_file(const std::string& path, ParseMode mode) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open " + path);
    return parse_dimacs(in, mode);
}

void write_dimacs(const CnfFormula& f, std::ostream& out) {
    out << "p cnf " << f.num_vars << ' ' << f.num_clauses() << '\n';
    for (const auto& c : f.clauses) {
        for (const auto& l : c)
            out << l.encoded() << ' ';
        out << "0\n";
    }
}

std::string write_dimacs(const CnfFormula& f) {
    std::ostringstream out;
    write_dimacs(f, out);
    return out.str();
}

CnfFormula generate_random_3sat(int num_vars, int num_clauses, uint64_t seed) {
    if (num_vars < 3)
        throw InvalidParam("random 3-SAT needs at least 3 variables, got " +
                           std::to_string(num_vars));
    if (num_clauses < 0)
        throw InvalidParam("negative clause count");
    Rng rng(seed);
    CnfFormula f;
    f.num_vars = num_vars;
    f.clauses.reserve(num_clauses);
    for (int k = 0; k < num_clauses; ++k) {
        int a, b, c;
        do {
            a = 1 + static_cast<int>(rng.bounded(num_vars));
            b = 1 + static_cast<int>(rng.bounded(num_vars));
            c = 1 + static_cast<int>(rng.bounded(num_vars));
        } while (a == b || a == c || b == c);
        Clause cl{{a, +1}, {b, +1}, {c, +1}};
        for (auto& lit : cl)
            if (rng.coin())
                lit.sign = -1;
        f.clauses.push_back(std::move(cl));
    }
    return f;
}

bool clause_true(const Clause& c, const Assignment& a) {
    for (const auto& l : c)
        if (literal_true(l, a))
            return true;
    return false;
}

EvalCounts evaluate_cnf(const CnfFormula& f, const Assignment& a) {
    if (static_cast<int>(a.size()) != f.num_vars)
        throw LengthMismatch("assignment has " + std::to_string(a.size()) +
                             " bits, formula has " + std::to_string(f.num_vars) +
                             " variables");
    EvalCounts counts;
    for (const auto& c : f.clauses)
        (clause_true(c, a) ? counts.satisfied : counts.violated)++;
    return counts;
}

} // namespace satq
