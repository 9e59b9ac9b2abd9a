#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coordmech/policies.hpp"

namespace coordmech {

struct MoveRecord {
    int job = -1;
    int from = -1;
    int to = -1;
    Rat old_key;
    Rat new_key;
    int round = 0; // 1-based
};

struct DynamicsTrace {
    std::vector<MoveRecord> moves;
    bool converged = false; // first silent round reached within max_rounds
    int rounds_executed = 0;
    Assignment final_state;
};

// Best response of job i: the machine minimizing cost_key, if strictly below
// the current key; ties break by lowest machine index.
inline std::optional<std::pair<int, Rat>> best_response(const PolicyConfig& cfg,
                                                        const Instance& inst,
                                                        const Assignment& a, int i) {
    Rat current = cost_key(cfg, inst, a, i, a.machine_of[i]);
    std::optional<std::pair<int, Rat>> best;
    for (int j = 0; j < inst.m; ++j) {
        if (!inst.finite(i, j) || j == a.machine_of[i]) continue;
        Rat key = cost_key(cfg, inst, a, i, j);
        if (key < current && (!best || key < best->second)) best = {j, key};
    }
    return best;
}

inline bool is_pne(const PolicyConfig& cfg, const Instance& inst, const Assignment& a) {
    for (int i = 0; i < inst.n; ++i)
        if (best_response(cfg, inst, a, i)) return false;
    return true;
}

// Repeats rounds of best-response moves; in each round every job in `order`
// plays once. Stops at the first round with no move, or at max_rounds.
inline DynamicsTrace run_rounds(const PolicyConfig& cfg, const Instance& inst,
                                const Assignment& initial, const std::vector<int>& order,
                                int max_rounds) {
    if (max_rounds < 1) throw DomainError("max_rounds must be >= 1");
    validate_assignment(inst, initial);
    DynamicsTrace trace;
    Assignment state = initial;
    for (int round = 1; round <= max_rounds; ++round) {
        bool moved = false;
        for (int i : order) {
            auto br = best_response(cfg, inst, state, i);
            if (!br) continue;
            Rat old_key = cost_key(cfg, inst, state, i, state.machine_of[i]);
            trace.moves.push_back(
                {i, state.machine_of[i], br->first, std::move(old_key), br->second, round});
            state.machine_of[i] = br->first;
            moved = true;
        }
        trace.rounds_executed = round;
        if (!moved) {
            trace.converged = true;
            break;
        }
    }
    trace.final_state = std::move(state);
    return trace;
}

inline std::vector<int> ascending_order(int n) {
    std::vector<int> order(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<size_t>(i)] = i;
    return order;
}

// Enumerates the feasible state space as a mixed-radix counter: job i
// contributes a digit over its finite strategy set (ascending machine
// order), job 0 being the least significant digit.
class StateSpace {
public:
    explicit StateSpace(const Instance& inst, std::uint64_t cap = kDefaultCap)
        : strategies_(static_cast<size_t>(inst.n)) {
        std::uint64_t count = 1;
        for (int i = 0; i < inst.n; ++i) {
            strategies_[static_cast<size_t>(i)] = inst.strategies(i);
            count *= strategies_[static_cast<size_t>(i)].size();
            if (count > cap)
                throw CapExceeded("state space exceeds cap of " + std::to_string(cap) +
                                  " states");
        }
        count_ = count;
    }

    static constexpr std::uint64_t kDefaultCap = 2'000'000;

    std::uint64_t count() const { return count_; }

    Assignment decode(std::uint64_t index) const {
        Assignment a;
        a.machine_of.resize(strategies_.size());
        for (size_t i = 0; i < strategies_.size(); ++i) {
            std::uint64_t radix = strategies_[i].size();
            a.machine_of[i] = strategies_[i][index % radix];
            index /= radix;
        }
        return a;
    }

    std::uint64_t encode(const Assignment& a) const {
        std::uint64_t index = 0;
        for (size_t i = strategies_.size(); i-- > 0;) {
            const auto& s = strategies_[i];
            auto it = std::find(s.begin(), s.end(), a.machine_of[i]);
            index = index * s.size() + static_cast<std::uint64_t>(it - s.begin());
        }
        return index;
    }

private:
    std::vector<std::vector<int>> strategies_;
    std::uint64_t count_ = 0;
};

inline std::vector<Assignment> enumerate_pne(const PolicyConfig& cfg, const Instance& inst,
                                             std::uint64_t cap = StateSpace::kDefaultCap) {
    StateSpace space(inst, cap);
    std::vector<Assignment> result;
    for (std::uint64_t s = 0; s < space.count(); ++s) {
        Assignment a = space.decode(s);
        if (is_pne(cfg, inst, a)) result.push_back(std::move(a));
    }
    return result;
}

// Full improving-move digraph over the feasible states. Edges are strictly
// improving single-job deviations (not only best responses). Sinks are
// exactly the pure Nash equilibria.
struct NashGraph {
    std::uint64_t state_count = 0;
    std::vector<std::vector<std::uint32_t>> edges; // adjacency by state index
    std::vector<std::uint32_t> sinks;
    std::vector<std::uint32_t> scc_id; // per state
    std::uint32_t scc_count = 0;
    // Closed state sequence witnessing a cycle, if any nontrivial SCC exists.
    std::optional<std::vector<std::uint32_t>> cycle;

    bool acyclic() const { return !cycle.has_value(); }
};

namespace detail {

// Iterative Tarjan SCC.
inline void tarjan_scc(NashGraph& g) {
    const std::uint32_t n = static_cast<std::uint32_t>(g.state_count);
    constexpr std::uint32_t kUnvisited = 0xffffffff;
    std::vector<std::uint32_t> index(n, kUnvisited), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    g.scc_id.assign(n, 0);
    g.scc_count = 0;
    std::uint32_t next_index = 0;

    struct Frame {
        std::uint32_t v;
        size_t edge = 0;
    };
    std::vector<Frame> frames;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != kUnvisited) continue;
        frames.push_back({root});
        while (!frames.empty()) {
            Frame& f = frames.back();
            std::uint32_t v = f.v;
            if (f.edge == 0) {
                index[v] = lowlink[v] = next_index++;
                stack.push_back(v);
                on_stack[v] = true;
            }
            bool descended = false;
            while (f.edge < g.edges[v].size()) {
                std::uint32_t w = g.edges[v][f.edge++];
                if (index[w] == kUnvisited) {
                    frames.push_back({w});
                    descended = true;
                    break;
                }
                if (on_stack[w]) lowlink[v] = std::min(lowlink[v], index[w]);
            }
            if (descended) continue;
            if (lowlink[v] == index[v]) {
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    g.scc_id[w] = g.scc_count;
                } while (w != v);
                ++g.scc_count;
            }
            frames.pop_back();
            if (!frames.empty()) {
                std::uint32_t parent = frames.back().v;
                lowlink[parent] = std::min(lowlink[parent], lowlink[v]);
            }
        }
    }
}

// Shortest closed walk through `start` inside its SCC, as a state sequence.
inline std::vector<std::uint32_t> cycle_through(const NashGraph& g, std::uint32_t start) {
    std::uint32_t scc = g.scc_id[start];
    std::vector<std::int64_t> parent(g.state_count, -2);
    std::vector<std::uint32_t> queue;
    for (std::uint32_t w : g.edges[start])
        if (g.scc_id[w] == scc && parent[w] == -2) {
            parent[w] = start;
            queue.push_back(w);
        }
    for (size_t head = 0; head < queue.size(); ++head) {
        std::uint32_t v = queue[head];
        if (v == start) break;
        for (std::uint32_t w : g.edges[v]) {
            if (g.scc_id[w] != scc || parent[w] != -2) continue;
            parent[w] = v;
            queue.push_back(w);
        }
    }
    std::vector<std::uint32_t> path{start};
    std::uint32_t v = start;
    do {
        v = static_cast<std::uint32_t>(parent[v]);
        path.push_back(v);
    } while (v != start);
    std::reverse(path.begin(), path.end());
    return path;
}

} // namespace detail

inline NashGraph nash_dynamics_graph(const PolicyConfig& cfg, const Instance& inst,
                                     std::uint64_t cap = StateSpace::kDefaultCap) {
    StateSpace space(inst, cap);
    NashGraph g;
    g.state_count = space.count();
    g.edges.resize(g.state_count);
    for (std::uint64_t s = 0; s < g.state_count; ++s) {
        Assignment a = space.decode(s);
        bool sink = true;
        for (int i = 0; i < inst.n; ++i) {
            Rat current = cost_key(cfg, inst, a, i, a.machine_of[i]);
            for (int j = 0; j < inst.m; ++j) {
                if (!inst.finite(i, j) || j == a.machine_of[i]) continue;
                if (cost_key(cfg, inst, a, i, j) < current) {
                    Assignment b = a;
                    b.machine_of[i] = j;
                    g.edges[s].push_back(static_cast<std::uint32_t>(space.encode(b)));
                    sink = false;
                }
            }
        }
        if (sink) g.sinks.push_back(static_cast<std::uint32_t>(s));
    }
    detail::tarjan_scc(g);
    // An SCC with >= 2 states witnesses a cycle (self-loops cannot occur:
    // every edge strictly decreases the mover's key).
    std::vector<std::uint32_t> scc_size(g.scc_count, 0);
    for (std::uint32_t id : g.scc_id) ++scc_size[id];
    for (std::uint64_t s = 0; s < g.state_count; ++s) {
        if (scc_size[g.scc_id[s]] >= 2) {
            g.cycle = detail::cycle_through(g, static_cast<std::uint32_t>(s));
            break;
        }
    }
    return g;
}

struct CycleStep {
    int job = -1;
    int from = -1;
    int to = -1;
    Rat old_key;
    Rat new_key;
    bool improving = false;
};

struct CycleReport {
    bool closed = false;       // first state equals last state
    bool single_mover = true;  // every consecutive pair differs in one job
    bool all_improving = true; // every mover strictly decreases its key
    std::vector<CycleStep> steps;
    std::string error;

    bool ok() const { return closed && single_mover && all_improving && error.empty(); }
};

// Checks a closed improving-move sequence, exactly.
inline CycleReport verify_cycle(const PolicyConfig& cfg, const Instance& inst,
                                const std::vector<Assignment>& states) {
    CycleReport report;
    if (states.size() < 2) {
        report.error = "cycle needs at least 2 states";
        return report;
    }
    for (const Assignment& a : states) validate_assignment(inst, a);
    report.closed = states.front() == states.back();
    for (size_t t = 0; t + 1 < states.size(); ++t) {
        const Assignment& a = states[t];
        const Assignment& b = states[t + 1];
        std::vector<int> movers;
        for (int i = 0; i < inst.n; ++i)
            if (a.machine_of[i] != b.machine_of[i]) movers.push_back(i);
        if (movers.size() != 1) {
            report.single_mover = false;
            report.error = "step " + std::to_string(t) + " changes " +
                           std::to_string(movers.size()) + " jobs";
            return report;
        }
        int i = movers[0];
        CycleStep step;
        step.job = i;
        step.from = a.machine_of[i];
        step.to = b.machine_of[i];
        step.old_key = cost_key(cfg, inst, a, i, step.from);
        step.new_key = cost_key(cfg, inst, a, i, step.to);
        step.improving = step.new_key < step.old_key;
        if (!step.improving) report.all_improving = false;
        report.steps.push_back(std::move(step));
    }
    return report;
}

// Phi(N) = sum_j Psi_{p+1}(N_j), the exact potential of the CCOORD game.
inline Rat potential_ccoord(const PolicyConfig& cfg, const Instance& inst, const Assignment& a) {
    if (cfg.mechanism != Mechanism::Ccoord)
        throw DomainError("potential_ccoord requires the ccoord mechanism");
    const int p = cfg.resolved_p(inst.m);
    Rat phi(0);
    for (int j = 0; j < inst.m; ++j) {
        PsiTable table(p + 1);
        for (int i = 0; i < inst.n; ++i)
            if (a.machine_of[i] == j) table.insert(inst.load(i, j));
        phi += table.value(p + 1);
    }
    return phi;
}

// The vector of exact per-job cost keys ordered by job ID. Under ACOORD it
// decreases lexicographically on every improving move, because a move never
// touches the completion of a smaller-ID job.
inline std::vector<Rat> potential_acoord_key(const PolicyConfig& cfg, const Instance& inst,
                                             const Assignment& a) {
    if (cfg.mechanism != Mechanism::Acoord)
        throw DomainError("potential_acoord_key requires the acoord mechanism");
    std::vector<Rat> keys;
    keys.reserve(static_cast<size_t>(inst.n));
    for (int i = 0; i < inst.n; ++i)
        keys.push_back(cost_key(cfg, inst, a, i, a.machine_of[i]));
    return keys;
}

} // namespace coordmech
