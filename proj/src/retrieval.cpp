#include "satq/retrieval.hpp"

#include <algorithm>

namespace satq {

GroupClassification classify_gadget_group(bool l1, bool l2, bool l3, bool d) {
    const int t = int(l1) + int(l2) + int(l3);
    GroupClassification gc;
    gc.case_id = t == 0 ? 1 : (t == 1 ? 2 : 3);
    // clauses: (l1)(l2)(l3)(d) (~l1|~l2)(~l1|~l3)(~l2|~l3) (l1|~d)(l2|~d)(l3|~d)
    int sat = t;                     // unit literal clauses
    sat += d ? 1 : 0;                // (d)
    sat += 3 - (t >= 2 ? (t == 2 ? 1 : 3) : 0); // pairwise negations
    if (d)
        sat += t; // (li | ~d) true only via li
    else
        sat += 3; // ~d satisfies all three
    gc.satisfied = sat;
    return gc;
}

namespace {

RetrievalResult infeasible_or(RetrievalResult r) {
    if (r.candidates.empty())
        throw Infeasible("no non-negative solution of the retrieval system");
    std::sort(r.candidates.begin(), r.candidates.end(),
              [](const RetrievalCandidate& a, const RetrievalCandidate& b) {
                  return a.violated < b.violated;
              });
    r.exact = r.candidates.size() == 1;
    return r;
}

} // namespace

RetrievalResult retrieve_counts_d0(long long satisfied_total, int m) {
    if (m < 0)
        throw InvalidParam("group count must be non-negative");
    // 6V + 7S = total, V + S = m  =>  S = total - 6m, V = 7m - total.
    const long long s = satisfied_total - 6LL * m;
    const long long v = 7LL * m - satisfied_total;
    RetrievalResult r;
    if (s >= 0 && v >= 0)
        r.candidates.push_back({static_cast<int>(v), static_cast<int>(s), std::nullopt});
    return infeasible_or(std::move(r));
}

RetrievalResult retrieve_counts_d1(long long satisfied_total, int m,
                                   std::optional<int> case1_count) {
    if (m < 0)
        throw InvalidParam("group count must be non-negative");
    // 4V + 6S12 + 7S13 = total, V + S12 + S13 = m. Given V:
    //   S13 = total - 6m + 2V,  S12 = 7m - 3V - total.
    RetrievalResult r;
    auto try_v = [&](long long v) {
        const long long s13 = satisfied_total - 6LL * m + 2 * v;
        const long long s12 = 7LL * m - 3 * v - satisfied_total;
        if (v >= 0 && s12 >= 0 && s13 >= 0)
            r.candidates.push_back({static_cast<int>(v),
                                    static_cast<int>(s12 + s13),
                                    std::make_pair(static_cast<int>(s12),
                                                   static_cast<int>(s13))});
    };
    if (case1_count) {
        if (*case1_count < 0 || *case1_count > m)
            throw InvalidParam("case-1 count out of range 0.." + std::to_string(m));
        try_v(*case1_count);
    } else {
        for (long long v = 0; v <= m; ++v)
            try_v(v);
    }
    return infeasible_or(std::move(r));
}

RetrievalResult retrieve_counts_mixed(const GadgetObservation& obs) {
    if (obs.groups_d0 < 0 || obs.groups_d1 < 0)
        throw InvalidParam("group counts must be non-negative");
    RetrievalResult r;
    if (obs.groups_d1 == 0) {
        if (obs.satisfied_d1 != 0)
            throw Infeasible("satisfied_d1 nonzero with no d=1 groups");
        return retrieve_counts_d0(obs.satisfied_d0, obs.groups_d0);
    }
    if (obs.groups_d0 == 0) {
        if (obs.satisfied_d0 != 0)
            throw Infeasible("satisfied_d0 nonzero with no d=0 groups");
        return retrieve_counts_d1(obs.satisfied_d1, obs.groups_d1, obs.case1_d1);
    }
    const RetrievalResult part0 = retrieve_counts_d0(obs.satisfied_d0, obs.groups_d0);
    const RetrievalResult part1 =
        retrieve_counts_d1(obs.satisfied_d1, obs.groups_d1, obs.case1_d1);
    for (const auto& a : part0.candidates)
        for (const auto& b : part1.candidates)
            r.candidates.push_back(
                {a.violated + b.violated, a.satisfied + b.satisfied, b.d1_split});
    return infeasible_or(std::move(r));
}

DirectCounts direct_counts(const Max2SatFormula& g, const Assignment& x) {
    if (static_cast<int>(x.size()) != g.num_vars)
        throw LengthMismatch("assignment has " + std::to_string(x.size()) +
                             " bits, formula has " + std::to_string(g.num_vars) +
                             " variables");
    DirectCounts dc;
    for (const auto& group : g.groups) {
        const Clause& c1 = g.clauses[group.clause_indices[0]];
        const Clause& c2 = g.clauses[group.clause_indices[1]];
        const Clause& c3 = g.clauses[group.clause_indices[2]];
        const bool l1 = literal_true(c1[0], x);
        const bool l2 = literal_true(c2[0], x);
        const bool l3 = literal_true(c3[0], x);
        const bool d = x[group.ancillary_var - 1] != 0;
        const GroupClassification gc = classify_gadget_group(l1, l2, l3, d);
        if (l1 || l2 || l3)
            ++dc.satisfied;
        else
            ++dc.violated;
        if (d) {
            dc.observation.satisfied_d1 += gc.satisfied;
            ++dc.observation.groups_d1;
            if (gc.case_id == 1)
                dc.observation.case1_d1 = dc.observation.case1_d1.value_or(0) + 1;
        } else {
            dc.observation.satisfied_d0 += gc.satisfied;
            ++dc.observation.groups_d0;
        }
    }
    if (dc.observation.groups_d1 > 0 && !dc.observation.case1_d1)
        dc.observation.case1_d1 = 0;
    return dc;
}

Assignment with_optimal_ancillas(const Max2SatFormula& g, const Assignment& original_bits) {
    if (static_cast<int>(original_bits.size()) != g.num_original_vars)
        throw LengthMismatch("assignment has " + std::to_string(original_bits.size()) +
                             " bits, formula has " +
                             std::to_string(g.num_original_vars) +
                             " original variables");
    Assignment x(original_bits);
    x.resize(g.num_vars, 0);
    for (const auto& group : g.groups) {
        const bool l1 = literal_true(g.clauses[group.clause_indices[0]][0], x);
        const bool l2 = literal_true(g.clauses[group.clause_indices[1]][0], x);
        const bool l3 = literal_true(g.clauses[group.clause_indices[2]][0], x);
        const int sat0 = classify_gadget_group(l1, l2, l3, false).satisfied;
        const int sat1 = classify_gadget_group(l1, l2, l3, true).satisfied;
        x[group.ancillary_var - 1] = sat1 > sat0 ? 1 : 0;
    }
    return x;
}

} // namespace satq
