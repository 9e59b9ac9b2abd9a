#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "coordmech/dynamics.hpp"

namespace coordmech {

// Exhaustive branch-and-bound minimizing the maximum machine load. Jobs are
// assigned in ID order; a branch is pruned once its running maximum reaches
// the best makespan found. Deterministic exploration order.
inline std::pair<Rat, Assignment> optimal_makespan(const Instance& inst,
                                                   std::uint64_t cap = StateSpace::kDefaultCap) {
    StateSpace space(inst, cap); // enforces the cap
    (void)space;
    Rat best_value;
    bool have_best = false;
    Assignment best, current;
    current.machine_of.assign(static_cast<size_t>(inst.n), -1);
    std::vector<Rat> loads(static_cast<size_t>(inst.m), Rat(0));

    auto recurse = [&](auto&& self, int i, const Rat& running_max) -> void {
        if (have_best && running_max >= best_value) return;
        if (i == inst.n) {
            best_value = running_max;
            best = current;
            have_best = true;
            return;
        }
        for (int j = 0; j < inst.m; ++j) {
            if (!inst.finite(i, j)) continue;
            loads[static_cast<size_t>(j)] += inst.load(i, j);
            current.machine_of[static_cast<size_t>(i)] = j;
            self(self, i + 1, std::max(running_max, loads[static_cast<size_t>(j)]));
            loads[static_cast<size_t>(j)] -= inst.load(i, j);
        }
        current.machine_of[static_cast<size_t>(i)] = -1;
    };
    recurse(recurse, 0, Rat(0));
    return {best_value, best};
}

// Maximum completion time over all jobs; the argmax is decided on exact
// keys (for the p-parameterized mechanisms, comparing rho * X^p across jobs
// is order-equivalent since all share the same p-th root).
inline double max_completion(const PolicyConfig& cfg, const Instance& inst, const Assignment& a) {
    bool rooted = uses_parameter_p(cfg.mechanism);
    const int p = cfg.resolved_p(inst.m);
    Rat best;
    bool have = false;
    for (int i = 0; i < inst.n; ++i) {
        Rat key = cost_key(cfg, inst, a, i, a.machine_of[i]);
        Rat c = rooted ? Rat(key / min_load(inst, i))
                       : (cfg.mechanism == Mechanism::Randomized ? Rat(key / 2) : key);
        if (!have || c > best) {
            best = c;
            have = true;
        }
    }
    if (!have) return 0.0;
    return rooted ? kth_root(best, p) : to_double(best);
}

// Explicit finite constants from the price-of-anarchy analyses, for the
// configured mechanism, its parameter p, and m machines.
inline double theorem_bound(const PolicyConfig& cfg, int m) {
    const int p = cfg.resolved_p(m);
    const double root = std::pow(static_cast<double>(m), 1.0 / (p + 1));
    switch (cfg.mechanism) {
        case Mechanism::Acoord:
            return std::exp(1.0) * (p + 1) * root + 1.0;
        case Mechanism::Bcoord:
            return 1.0 + (2.0 * p + 1.0) / std::log(static_cast<double>(p) + 1.0) * root;
        case Mechanism::Ccoord:
            return (p + 1.0) * (p + 1.0) / std::log(2.0) * root + p;
        default:
            throw DomainError("no theorem bound for mechanism " +
                              mechanism_name(cfg.mechanism));
    }
}

// Price-of-stability bound for CCOORD: (p+1) m^{1/(p+1)} + p.
inline double theorem_bound_stability(const PolicyConfig& cfg, int m) {
    if (cfg.mechanism != Mechanism::Ccoord)
        throw DomainError("stability bound applies to ccoord only");
    const int p = cfg.resolved_p(m);
    return (p + 1.0) * std::pow(static_cast<double>(m), 1.0 / (p + 1)) + p;
}

struct BoundRow {
    std::size_t pne_index = 0;
    double max_completion = 0.0;
    double ratio = 0.0;
    double bound = std::numeric_limits<double>::quiet_NaN(); // NaN when no theorem applies
    bool pass = true;
};

struct BoundReport {
    std::string status; // "ok" or "no PNE found"
    Rat opt_makespan;
    Assignment opt_assignment;
    std::vector<BoundRow> rows; // one per enumerated PNE
    double poa = 0.0;
    double pos = 0.0;
    // CCOORD only: the minimum-potential PNE and its ratio.
    std::optional<std::size_t> min_potential_index;
    double min_potential_ratio = 0.0;
};

inline BoundReport equilibrium_report(const PolicyConfig& cfg, const Instance& inst,
                                      std::uint64_t cap = StateSpace::kDefaultCap) {
    BoundReport report;
    auto [opt, opt_assignment] = optimal_makespan(inst, cap);
    report.opt_makespan = opt;
    report.opt_assignment = opt_assignment;
    const double opt_d = to_double(opt);
    std::vector<Assignment> pnes = enumerate_pne(cfg, inst, cap);
    if (pnes.empty()) {
        report.status = "no PNE found";
        return report;
    }
    report.status = "ok";
    bool has_bound = uses_parameter_p(cfg.mechanism);
    double bound = has_bound ? theorem_bound(cfg, inst.m)
                             : std::numeric_limits<double>::quiet_NaN();
    Rat min_phi;
    for (std::size_t t = 0; t < pnes.size(); ++t) {
        BoundRow row;
        row.pne_index = t;
        row.max_completion = max_completion(cfg, inst, pnes[t]);
        row.ratio = row.max_completion / opt_d;
        row.bound = bound;
        if (has_bound) row.pass = row.ratio <= bound * (1.0 + 1e-9);
        report.rows.push_back(row);
        if (t == 0 || row.ratio > report.poa) report.poa = row.ratio;
        if (t == 0 || row.ratio < report.pos) report.pos = row.ratio;
        if (cfg.mechanism == Mechanism::Ccoord) {
            Rat phi = potential_ccoord(cfg, inst, pnes[t]);
            if (!report.min_potential_index || phi < min_phi) {
                min_phi = phi;
                report.min_potential_index = t;
                report.min_potential_ratio = row.ratio;
            }
        }
    }
    return report;
}

inline BoundReport price_of_anarchy(const PolicyConfig& cfg, const Instance& inst,
                                    std::uint64_t cap = StateSpace::kDefaultCap) {
    return equilibrium_report(cfg, inst, cap);
}

inline BoundReport price_of_stability(const PolicyConfig& cfg, const Instance& inst,
                                      std::uint64_t cap = StateSpace::kDefaultCap) {
    return equilibrium_report(cfg, inst, cap);
}

struct RandomInstanceSpec {
    int n = 1;
    int m = 1;
    std::uint64_t seed = 0;
    long max_numerator = 20;  // loads are num/den with num in [1, max_numerator]
    long max_denominator = 4; // and den in [1, max_denominator]
    double inf_probability = 0.0;
};

// Reproducible random instance; rows are resampled until each job has at
// least one finite machine. Draws go through explicit modulo reduction so
// streams are identical across standard library implementations.
inline Instance random_instance(const RandomInstanceSpec& spec) {
    if (spec.n < 1 || spec.m < 1 || spec.max_numerator < 1 || spec.max_denominator < 1 ||
        spec.inf_probability < 0.0 || spec.inf_probability >= 1.0)
        throw DomainError("invalid random instance parameters");
    std::mt19937_64 rng(spec.seed);
    auto draw_long = [&](long max) { return 1 + static_cast<long>(rng() % static_cast<std::uint64_t>(max)); };
    auto draw_unit = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    Instance inst;
    inst.n = spec.n;
    inst.m = spec.m;
    inst.loads.resize(static_cast<size_t>(spec.n));
    for (auto& row : inst.loads) {
        do {
            row.clear();
            for (int j = 0; j < spec.m; ++j) {
                if (draw_unit() < spec.inf_probability) {
                    row.push_back(std::nullopt);
                } else {
                    Rat v(draw_long(spec.max_numerator), draw_long(spec.max_denominator));
                    v.canonicalize();
                    row.push_back(std::move(v));
                }
            }
        } while (std::none_of(row.begin(), row.end(),
                              [](const LoadEntry& e) { return e.has_value(); }));
    }
    inst.validate();
    return inst;
}

} // namespace coordmech
