#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "satq/errors.hpp"

namespace satq {

/// One literal: 1-based variable index plus a sign (+1 plain, -1 negated).
struct Literal {
    int var = 0;
    int sign = +1;

    /// Signed DIMACS encoding: sign * var.
    int encoded() const { return sign * var; }

    static Literal from_encoded(int lit) { return {lit < 0 ? -lit : lit, lit < 0 ? -1 : +1}; }

    Literal negated() const { return {var, -sign}; }

    bool operator==(const Literal&) const = default;
};

/// Disjunction of 1..3 literals with pairwise-distinct variables.
using Clause = std::vector<Literal>;

struct CnfFormula {
    int num_vars = 0;
    std::vector<Clause> clauses;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    double density() const {
        return num_vars > 0 ? static_cast<double>(clauses.size()) / num_vars : 0.0;
    }
    /// True when every clause has exactly 3 literals (gadget eligibility).
    bool is_strict_3sat() const;

    bool operator==(const CnfFormula&) const = default;
};

/// bits[i] is the value of variable i+1.
using Assignment = std::vector<uint8_t>;

enum class ParseMode {
    strict3sat, // every clause must have exactly 3 literals
    lenient     // clauses of 1..3 literals accepted
};

/// Parse DIMACS CNF: optional `c` comments, one `p cnf N M` header, clauses
/// as nonzero integers terminated by 0 (may span lines). A `%` token ends
/// the clause section (SATLIB convention). Throws ParseError on malformed
/// or duplicate headers, literals out of range, clauses longer than 3
/// literals (or != 3 in strict mode), duplicate variables within a clause,
/// and clause count mismatches.
CnfFormula parse_dimacs(std::istream& in, ParseMode mode = ParseMode::strict3sat);
CnfFormula parse_dimacs(const std::string& text, ParseMode mode = ParseMode::strict3sat);
CnfFormula parse_dimacs_file(const std::string& path, ParseMode mode = ParseMode::strict3sat);

/// Writer emits "p cnf N M\n" then one clause per line, literals separated
/// by single spaces, each line terminated by " 0\n". parse(write(f)) == f.
void write_dimacs(const CnfFormula& f, std::ostream& out);
std::string write_dimacs(const CnfFormula& f);

/// Uniform random 3-SAT: each clause draws 3 pairwise-distinct variables
/// (whole triple redrawn on collision), then one negation coin per literal.
/// Draw order per clause: var1, var2, var3, sign1, sign2, sign3.
CnfFormula generate_random_3sat(int num_vars, int num_clauses, uint64_t seed);

struct EvalCounts {
    int satisfied = 0;
    int violated = 0;
};

inline bool literal_true(Literal l, const Assignment& a) {
    return l.sign > 0 ? a[l.var - 1] != 0 : a[l.var - 1] == 0;
}

bool clause_true(const Clause& c, const Assignment& a);

/// Count satisfied/violated clauses; satisfied + violated == M.
EvalCounts evaluate_cnf(const CnfFormula& f, const Assignment& a);

} // namespace satq
