#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "coordmech/rational.hpp"

namespace coordmech {

// An unrelated-machines scheduling instance: n jobs, m machines, and the
// n-by-m load matrix. Job IDs are the 0-based row indices. An infinite
// entry removes the machine from that job's strategy set.
struct Instance {
    int n = 0;
    int m = 0;
    std::vector<std::vector<LoadEntry>> loads; // loads[job][machine]

    // Throws ParseError on a malformed matrix: wrong dimensions,
    // non-positive finite entries, or a job with no finite machine.
    void validate() const {
        if (n < 1 || m < 1) throw ParseError("instance needs n >= 1 jobs and m >= 1 machines");
        if (static_cast<int>(loads.size()) != n)
            throw ParseError("load matrix has " + std::to_string(loads.size()) +
                             " rows, expected " + std::to_string(n));
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(loads[i].size()) != m)
                throw ParseError("row " + std::to_string(i) + " has " +
                                 std::to_string(loads[i].size()) + " entries, expected " +
                                 std::to_string(m));
            bool any_finite = false;
            for (int j = 0; j < m; ++j) {
                if (!loads[i][j]) continue;
                any_finite = true;
                if (*loads[i][j] <= 0)
                    throw ParseError("non-positive load at job " + std::to_string(i) +
                                     ", machine " + std::to_string(j));
            }
            if (!any_finite)
                throw ParseError("job " + std::to_string(i) + " has no finite-load machine");
        }
    }

    bool finite(int i, int j) const { return loads[i][j].has_value(); }
    const Rat& load(int i, int j) const { return *loads[i][j]; }

    // Machines job i may use, in ascending index order.
    std::vector<int> strategies(int i) const {
        std::vector<int> s;
        for (int j = 0; j < m; ++j)
            if (finite(i, j)) s.push_back(j);
        return s;
    }
};

// One state of the induced game: machine_of[i] is job i's machine.
struct Assignment {
    std::vector<int> machine_of;

    bool operator==(const Assignment&) const = default;
};

inline void validate_assignment(const Instance& inst, const Assignment& a) {
    if (static_cast<int>(a.machine_of.size()) != inst.n)
        throw DomainError("assignment has " + std::to_string(a.machine_of.size()) +
                          " entries, expected " + std::to_string(inst.n));
    for (int i = 0; i < inst.n; ++i) {
        int j = a.machine_of[i];
        if (j < 0 || j >= inst.m || !inst.finite(i, j))
            throw DomainError("job " + std::to_string(i) + " assigned to machine " +
                              std::to_string(j) + " outside its strategy set");
    }
}

// w_{i,min}: minimum finite load of job i over all machines.
inline Rat min_load(const Instance& inst, int i) {
    const Rat* best = nullptr;
    for (int j = 0; j < inst.m; ++j)
        if (inst.finite(i, j) && (!best || inst.load(i, j) < *best)) best = &inst.load(i, j);
    return *best;
}

// rho_ij = w_ij / w_{i,min}; always >= 1.
inline Rat inefficiency(const Instance& inst, int i, int j) {
    if (!inst.finite(i, j))
        throw DomainError("machine " + std::to_string(j) + " not in strategy set of job " +
                          std::to_string(i));
    return Rat(inst.load(i, j) / min_load(inst, i));
}

// L(N_j): total load on machine j; 0 for an empty machine.
inline Rat machine_load(const Instance& inst, const Assignment& a, int j) {
    Rat sum(0);
    for (int i = 0; i < inst.n; ++i)
        if (a.machine_of[i] == j) sum += inst.load(i, j);
    return sum;
}

// L(N_j^i): load on machine j restricted to jobs with ID <= i.
inline Rat prefix_load(const Instance& inst, const Assignment& a, int j, int i) {
    Rat sum(0);
    for (int k = 0; k <= i && k < inst.n; ++k)
        if (a.machine_of[k] == j) sum += inst.load(k, j);
    return sum;
}

// (sum v^k)^{1/k}; sandwiched between max and m^{1/k} * max.
inline double lp_norm(const std::vector<Rat>& values, int k) {
    if (k < 1) throw DomainError("lp_norm requires k >= 1");
    Rat sum(0);
    for (const Rat& v : values) sum += rat_pow(v, static_cast<unsigned long>(k));
    return kth_root(sum, k);
}

inline std::vector<Rat> machine_loads(const Instance& inst, const Assignment& a) {
    std::vector<Rat> loads;
    loads.reserve(inst.m);
    for (int j = 0; j < inst.m; ++j) loads.push_back(machine_load(inst, a, j));
    return loads;
}

} // namespace coordmech
