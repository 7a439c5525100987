#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "satq/reduction.hpp"

namespace satq {

/// Per-ancillary-value satisfied totals of a solved converted formula.
struct GadgetObservation {
    long long satisfied_d0 = 0; // total satisfied clauses over groups with d=0
    long long satisfied_d1 = 0; // total satisfied clauses over groups with d=1
    int groups_d0 = 0;
    int groups_d1 = 0;
    std::optional<int> case1_d1; // Case-1 groups (all three literals false) with d=1

    bool operator==(const GadgetObservation&) const = default;
};

struct RetrievalCandidate {
    int violated = 0;
    int satisfied = 0;
    // For the d=1 part: (Case-2 count, Case-3 count) behind this candidate.
    std::optional<std::pair<int, int>> d1_split;

    bool operator==(const RetrievalCandidate&) const = default;
};

struct RetrievalResult {
    std::vector<RetrievalCandidate> candidates; // sorted by violated count
    bool exact = false;
};

struct GroupClassification {
    int case_id = 0;  // 1: (0,0,0); 2: exactly one literal true; 3: otherwise
    int satisfied = 0; // satisfied clauses among the group's 10, by direct evaluation
};

/// Classify one gadget group from the truth values of its three original
/// literals and its ancillary bit.
GroupClassification classify_gadget_group(bool l1, bool l2, bool l3, bool d);

/// d=0 partition: the unique non-negative solution of
///   6 V + 7 S = satisfied_total,  V + S = m.
/// Throws Infeasible when none exists.
RetrievalResult retrieve_counts_d0(long long satisfied_total, int m);

/// d=1 partition: non-negative solutions of
///   4 V + 6 S12 + 7 S13 = satisfied_total,  V + S12 + S13 = m,
/// one candidate per feasible V (the split (S12, S13) is unique given V).
/// When case1_count is supplied, V is fixed to it and the remaining 2x2
/// system is solved exactly.
RetrievalResult retrieve_counts_d1(long long satisfied_total, int m,
                                   std::optional<int> case1_count = std::nullopt);

/// Theorem-2 combination: solve both partitions and sum candidates
/// componentwise; exact iff both parts are exact.
RetrievalResult retrieve_counts_mixed(const GadgetObservation& obs);

/// Ground-truth oracle: evaluates every original clause and every gadget
/// clause directly on x, tallying the observation as it goes.
struct DirectCounts {
    int violated = 0;
    int satisfied = 0;
    GadgetObservation observation;
};

DirectCounts direct_counts(const Max2SatFormula& g, const Assignment& x);

/// Extend an assignment of the original variables with per-group optimal
/// ancillaries (argmax over d of the group's satisfied count, ties -> d=0).
Assignment with_optimal_ancillas(const Max2SatFormula& g, const Assignment& original_bits);

} // namespace satq
