#pragma once

#include <array>
#include <iosfwd>
#include <utility>
#include <vector>

#include "satq/cnf.hpp"

namespace satq {

/// Provenance of one original clause inside the converted formula.
struct GadgetGroup {
    int original_clause_index = 0;          // k, 0-based
    std::array<int, 10> clause_indices{};   // into Max2SatFormula::clauses
    int ancillary_var = 0;                  // 1-based, in N+1 .. N+M
};

/// Max 2-SAT formula produced by the (7,10)-gadget. Clause layout is
/// canonical: group k occupies clause slots 10k..10k+9 in template order
/// (l1)(l2)(l3)(d)(~l1|~l2)(~l1|~l3)(~l2|~l3)(l1|~d)(l2|~d)(l3|~d),
/// and its ancillary is variable N+k+1.
struct Max2SatFormula {
    int num_original_vars = 0; // N
    int num_vars = 0;          // N' = N + M
    std::vector<Clause> clauses;
    std::vector<GadgetGroup> groups;

    int num_clauses() const { return static_cast<int>(clauses.size()); }
    int num_original_clauses() const { return static_cast<int>(groups.size()); }
};

/// Replace each 3-literal clause by its 10 gadget clauses plus one fresh
/// ancillary variable. Negated literals substitute into the template with
/// the sign flipped where the template negates. Throws NotStrict3Sat.
Max2SatFormula gadget_convert(const CnfFormula& f);

/// V(x): number of violated clauses of g under x, by direct evaluation.
int count_violated(const Max2SatFormula& g, const Assignment& x);

/// QUBO q(x) = 1/2 x^T Q x + b^T x + c with symmetric zero-diagonal Q.
/// Q is stored sparse as per-row adjacency with both (i,j) and (j,i)
/// present; vectors are indexed by variable-1. Built from a Max 2-SAT
/// formula, q(x) = 2 * V(x) exactly.
struct QuboModel {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // adj[i]: (j, Q_ij), 0-based
    std::vector<double> b;
    double c = 0.0;

    double coeff(int i, int j) const; // Q_ij, 0-based
    int num_entries() const;          // stored off-diagonal entries (both directions)
};

/// Per two-literal clause with values v1, v2 and columns j1, j2:
///   Q[j1][j2] += 2 v1 v2 (symmetrized),
///   b[j1] += -v1 (1 + v2), b[j2] += -v2 (1 + v1),
///   c += (1 + v1)(1 + v2) / 2.
/// Per one-literal clause (j, v): b[j] += -2v, c += (1 + v).
/// Entries that cancel to zero are dropped.
QuboModel build_qubo(const Max2SatFormula& g);

double qubo_objective(const QuboModel& m, const Assignment& x);

/// q(x with variable `var` flipped) - q(x), computed incrementally as
/// (1 - 2 x_var) (b_var + sum_j Q_{var,j} x_j). `var` is 1-based.
double flip_delta(const QuboModel& m, const Assignment& x, int var);

/// spins[i] = +1 iff bits[i] = 1.
using SpinVector = std::vector<int8_t>;

/// Ising model whose energy counts violated clauses:
///   energy(s) = (sum_{i<j} J_ij s_i s_j + sum_i h_i s_i) / 4 + offset.
/// J and h carry the unscaled per-clause accumulations
///   J[j1][j2] += v1 v2,  h[j1] += -v1,  h[j2] += -v2,  offset += 1/4
/// for two-literal clauses, and h[j] += -2v, offset += 1/2 for one-literal
/// clauses, so energy(spins(x)) = V(x) exactly.
struct IsingModel {
    int n = 0;
    std::vector<std::vector<std::pair<int, double>>> adj; // adj[i]: (j, J_ij), 0-based
    std::vector<double> h;
    double offset = 0.0;

    double coeff(int i, int j) const;
    int num_entries() const;
};

IsingModel build_ising(const Max2SatFormula& g);

double ising_energy(const IsingModel& m, const SpinVector& s);

SpinVector spins_from_bits(const Assignment& x);
Assignment bits_from_spins(const SpinVector& s);

/// Text exports (see docs/formats.md). QUBO: header "qubo N", lines
/// "i j coeff" with i<j (1-based), then "b i coeff", then "c coeff".
/// Ising: header "ising N", "i j coeff", "h i coeff", "c coeff".
void write_qubo(const QuboModel& m, std::ostream& out);
void write_ising(const IsingModel& m, std::ostream& out);

/// Max 2-SAT export: a DIMACS body preceded by a marker comment
/// "c max2sat orig_vars=N orig_clauses=M" from which the canonical group
/// layout is reconstructed on read.
void write_max2sat(const Max2SatFormula& g, std::ostream& out);
Max2SatFormula read_max2sat(std::istream& in);

} // namespace satq
