#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "coordmech/instance.hpp"
#include "coordmech/psi.hpp"

namespace coordmech {

enum class Mechanism {
    Makespan,
    ShortestFirst,
    LongestFirst,
    Randomized,
    Acoord,
    Bcoord,
    Ccoord,
};

inline std::string mechanism_name(Mechanism mech) {
    switch (mech) {
        case Mechanism::Makespan: return "makespan";
        case Mechanism::ShortestFirst: return "shortestfirst";
        case Mechanism::LongestFirst: return "longestfirst";
        case Mechanism::Randomized: return "randomized";
        case Mechanism::Acoord: return "acoord";
        case Mechanism::Bcoord: return "bcoord";
        case Mechanism::Ccoord: return "ccoord";
    }
    return "?";
}

inline Mechanism mechanism_from_name(const std::string& name) {
    for (Mechanism mech : {Mechanism::Makespan, Mechanism::ShortestFirst,
                           Mechanism::LongestFirst, Mechanism::Randomized, Mechanism::Acoord,
                           Mechanism::Bcoord, Mechanism::Ccoord})
        if (mechanism_name(mech) == name) return mech;
    throw DomainError("unknown mechanism: " + name);
}

inline bool uses_parameter_p(Mechanism mech) {
    return mech == Mechanism::Acoord || mech == Mechanism::Bcoord || mech == Mechanism::Ccoord;
}

// Mechanism plus the integer parameter p. p == 0 means "unset"; it resolves
// to max(1, ceil(log2 m)) for the mechanisms that use it.
struct PolicyConfig {
    Mechanism mechanism = Mechanism::Makespan;
    int p = 0;

    int resolved_p(int m) const {
        if (!uses_parameter_p(mechanism)) return 1;
        if (p >= 1) return p;
        int q = 1;
        while ((1 << q) < m) ++q;
        return std::max(1, q);
    }
};

namespace detail {

// Loads of the other jobs currently on machine j.
inline Rat others_load(const Instance& inst, const Assignment& a, int i, int j) {
    Rat sum(0);
    for (int k = 0; k < inst.n; ++k)
        if (k != i && a.machine_of[k] == j) sum += inst.load(k, j);
    return sum;
}

// Completion of job i on machine j under an ordered non-preemptive policy,
// with i hypothetically placed on j. Ties in load break by ascending ID.
inline Rat ordered_completion(const Instance& inst, const Assignment& a, int i, int j,
                              bool longest_first) {
    const Rat& wi = inst.load(i, j);
    Rat sum = wi;
    for (int k = 0; k < inst.n; ++k) {
        if (k == i || a.machine_of[k] != j) continue;
        const Rat& wk = inst.load(k, j);
        bool before;
        if (wk != wi)
            before = longest_first ? wk > wi : wk < wi;
        else
            before = k < i;
        if (before) sum += wk;
    }
    return sum;
}

} // namespace detail

// Exact comparable cost of job i hypothetically deviating to machine j (all
// other jobs fixed; j may be i's current machine). For a fixed job, the key
// is a strictly increasing transform of the completion time: for the
// p-parameterized mechanisms it is the completion raised to the p-th power
// and scaled by w_{i,min}; for Randomized it is twice the expectation.
inline Rat cost_key(const PolicyConfig& cfg, const Instance& inst, const Assignment& a, int i,
                    int j) {
    if (!inst.finite(i, j))
        throw DomainError("machine " + std::to_string(j) + " not in strategy set of job " +
                          std::to_string(i));
    const Rat& wij = inst.load(i, j);
    const int p = cfg.resolved_p(inst.m);
    switch (cfg.mechanism) {
        case Mechanism::Makespan:
            return Rat(detail::others_load(inst, a, i, j) + wij);
        case Mechanism::ShortestFirst:
            return detail::ordered_completion(inst, a, i, j, false);
        case Mechanism::LongestFirst:
            return detail::ordered_completion(inst, a, i, j, true);
        case Mechanism::Randomized:
            return Rat(wij + detail::others_load(inst, a, i, j) + wij);
        case Mechanism::Acoord: {
            Rat prefix(0);
            for (int k = 0; k < i; ++k)
                if (a.machine_of[k] == j) prefix += inst.load(k, j);
            return Rat(wij * rat_pow(prefix + wij, static_cast<unsigned long>(p)));
        }
        case Mechanism::Bcoord: {
            Rat load = detail::others_load(inst, a, i, j) + wij;
            return Rat(wij * rat_pow(load, static_cast<unsigned long>(p)));
        }
        case Mechanism::Ccoord: {
            PsiTable table(p);
            for (int k = 0; k < inst.n; ++k)
                if (k != i && a.machine_of[k] == j) table.insert(inst.load(k, j));
            table.insert(wij);
            return Rat(wij * table.value(p));
        }
    }
    throw DomainError("unknown mechanism");
}

// Completion time (real) recovered from a cost key of job i.
inline double completion_from_key(const PolicyConfig& cfg, const Instance& inst, int i,
                                  const Rat& key) {
    switch (cfg.mechanism) {
        case Mechanism::Makespan:
        case Mechanism::ShortestFirst:
        case Mechanism::LongestFirst:
            return to_double(key);
        case Mechanism::Randomized:
            return to_double(key) / 2.0;
        default:
            break;
    }
    // key = w_ij * X^p, completion = rho^{1/p} X = (key / w_min)^{1/p}
    const int p = cfg.resolved_p(inst.m);
    return kth_root(Rat(key / min_load(inst, i)), p);
}

// Completion time of job i on its current machine. Rendered as a real;
// roots are taken in double precision (12 significant digits reported).
inline double completion_time(const PolicyConfig& cfg, const Instance& inst, const Assignment& a,
                              int i) {
    return completion_from_key(cfg, inst, i, cost_key(cfg, inst, a, i, a.machine_of[i]));
}

// Hypothetical completion of job i if it deviates to machine j.
inline double hypothetical_completion(const PolicyConfig& cfg, const Instance& inst,
                                      const Assignment& a, int i, int j) {
    return completion_from_key(cfg, inst, i, cost_key(cfg, inst, a, i, j));
}

struct FeasibilityViolation {
    int job = -1;
    int machine = -1;
};

struct FeasibilityReport {
    bool ok = true;
    std::vector<FeasibilityViolation> violations;
};

// Verifies the schedule-feasibility condition: for every job, the total load
// of jobs on its machine finishing no later than it is at most its completion
// time. Comparisons are exact; where completion times involve p-th roots the
// check compares p-th powers. For Randomized, whose cost is an expectation
// over processing orders rather than a realized schedule, the condition is
// checked on the realized ascending-ID sequential schedule.
inline FeasibilityReport check_feasibility(const PolicyConfig& cfg, const Instance& inst,
                                           const Assignment& a) {
    FeasibilityReport report;
    const int p = cfg.resolved_p(inst.m);
    const bool rooted = uses_parameter_p(cfg.mechanism);
    for (int j = 0; j < inst.m; ++j) {
        std::vector<int> jobs;
        for (int i = 0; i < inst.n; ++i)
            if (a.machine_of[i] == j) jobs.push_back(i);
        if (jobs.empty()) continue;
        // Exact comparable completion value c_i per job: the completion itself
        // for the rational-valued policies, its p-th power otherwise.
        std::vector<Rat> comp(jobs.size());
        for (size_t t = 0; t < jobs.size(); ++t) {
            int i = jobs[t];
            switch (cfg.mechanism) {
                case Mechanism::Makespan:
                case Mechanism::ShortestFirst:
                case Mechanism::LongestFirst:
                    comp[t] = cost_key(cfg, inst, a, i, j);
                    break;
                case Mechanism::Randomized:
                    // realized ascending-ID schedule: prefix sums
                    comp[t] = prefix_load(inst, a, j, i);
                    break;
                default:
                    // rho_ij * X_i^p = key / w_{i,min}
                    comp[t] = cost_key(cfg, inst, a, i, j) / min_load(inst, i);
                    break;
            }
        }
        for (size_t t = 0; t < jobs.size(); ++t) {
            Rat total(0);
            for (size_t u = 0; u < jobs.size(); ++u)
                if (comp[u] <= comp[t]) total += inst.load(jobs[u], j);
            bool feasible = rooted ? rat_pow(total, static_cast<unsigned long>(p)) <= comp[t]
                                   : total <= comp[t];
            if (!feasible) {
                report.ok = false;
                report.violations.push_back({jobs[t], j});
            }
        }
    }
    return report;
}

} // namespace coordmech
