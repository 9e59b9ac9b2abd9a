#include <catch2/catch_amalgamated.hpp>

#include <algorithm>

#include "coordmech/policies.hpp"
#include "coordmech/scenarios.hpp"
#include "helpers.hpp"

using namespace coordmech;
using coordmech::testing::TestRng;

TEST_CASE("default parameter p") {
    PolicyConfig cfg{Mechanism::Bcoord, 0};
    CHECK(cfg.resolved_p(1) == 1);
    CHECK(cfg.resolved_p(2) == 1);
    CHECK(cfg.resolved_p(4) == 2);
    CHECK(cfg.resolved_p(5) == 3);
    CHECK(cfg.resolved_p(8) == 3);
    CHECK(PolicyConfig{Mechanism::Bcoord, 7}.resolved_p(4) == 7);
}

TEST_CASE("LongestFirst completion times from the published cycle") {
    auto sc = load_scenario("longestfirst-cycle");
    // state (C, B, A, -): job B on machine 2 completes at 10
    CHECK(cost_key(sc.policy, sc.instance, sc.states[0], 1, 1) == 10);
    // state (C, -, AB, -): job A completes at 12 behind the heavier B
    CHECK(cost_key(sc.policy, sc.instance, sc.states[1], 0, 2) == 12);
    CHECK(completion_time(sc.policy, sc.instance, sc.states[1], 0) == 12.0);
}

TEST_CASE("Randomized expected completion from the published cycle") {
    auto sc = load_scenario("randomized-cycle");
    // state (CD, BE, AF, G): job B on machine 2, expectation (171+171+2)/2 = 172
    CHECK(completion_time(sc.policy, sc.instance, sc.states[0], 1) == 172.0);
    CHECK(cost_key(sc.policy, sc.instance, sc.states[0], 1, 1) == 344);
}

TEST_CASE("Makespan completion is the machine load") {
    Instance inst;
    inst.n = 1;
    inst.m = 2;
    inst.loads = {{Rat(7), Rat(9)}};
    Assignment a{{0}};
    PolicyConfig cfg{Mechanism::Makespan, 0};
    CHECK(completion_time(cfg, inst, a, 0) == 7.0);

    TestRng rng(31);
    for (int trial = 0; trial < 50; ++trial) {
        Instance r = rng.instance(5, 3);
        Assignment s = rng.assignment(r);
        for (int i = 0; i < r.n; ++i)
            CHECK(cost_key(cfg, r, s, i, s.machine_of[i]) ==
                  machine_load(r, s, s.machine_of[i]));
    }
}

TEST_CASE("BCOORD exact cost keys from the published cycle") {
    auto sc = load_scenario("bcoord-cycle");
    const Assignment& first = sc.states[0]; // (C, B, AD, E)
    CHECK(cost_key(sc.policy, sc.instance, first, 1, 1) ==
          parse_rational("561.127758090641"));
    CHECK(cost_key(sc.policy, sc.instance, first, 1, 2) ==
          parse_rational("561.063473430968"));
}

TEST_CASE("cost_key rejects infinite-load machines") {
    auto sc = load_scenario("longestfirst-cycle");
    CHECK_THROWS_AS(cost_key(sc.policy, sc.instance, sc.states[0], 0, 1), DomainError);
}

TEST_CASE("CCOORD with p = 1 coincides with BCOORD with p = 1") {
    TestRng rng(32);
    PolicyConfig b{Mechanism::Bcoord, 1};
    PolicyConfig c{Mechanism::Ccoord, 1};
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst = rng.instance(5, 4);
        Assignment a = rng.assignment(inst);
        for (int i = 0; i < inst.n; ++i)
            for (int j : inst.strategies(i))
                CHECK(cost_key(b, inst, a, i, j) == cost_key(c, inst, a, i, j));
    }
}

TEST_CASE("ACOORD completion depends only on smaller IDs") {
    TestRng rng(33);
    PolicyConfig cfg{Mechanism::Acoord, 2};
    for (int trial = 0; trial < 100; ++trial) {
        Instance inst = rng.instance(5, 4);
        if (inst.n < 2) continue;
        Assignment a = rng.assignment(inst);
        int i = static_cast<int>(rng.uniform(0, inst.n - 2));
        Rat before = cost_key(cfg, inst, a, i, a.machine_of[i]);
        // reassign an arbitrary larger-ID job
        int k = static_cast<int>(rng.uniform(i + 1, inst.n - 1));
        auto strategies = inst.strategies(k);
        Assignment b = a;
        b.machine_of[k] =
            strategies[static_cast<size_t>(rng.uniform(0, static_cast<long>(strategies.size()) - 1))];
        CHECK(cost_key(cfg, inst, b, i, b.machine_of[i]) == before);
    }
}

TEST_CASE("completion multiset is invariant under ID permutation for anonymous policies") {
    TestRng rng(34);
    for (Mechanism mech : {Mechanism::Makespan, Mechanism::Bcoord, Mechanism::Ccoord}) {
        PolicyConfig cfg{mech, 2};
        for (int trial = 0; trial < 30; ++trial) {
            Instance inst = rng.instance(5, 3);
            Assignment a = rng.assignment(inst);
            std::vector<int> perm(static_cast<size_t>(inst.n));
            for (int i = 0; i < inst.n; ++i) perm[static_cast<size_t>(i)] = i;
            for (size_t i = perm.size(); i > 1; --i)
                std::swap(perm[i - 1],
                          perm[static_cast<size_t>(rng.uniform(0, static_cast<long>(i) - 1))]);
            Instance permuted = inst;
            Assignment pa = a;
            for (int i = 0; i < inst.n; ++i) {
                permuted.loads[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
                    inst.loads[static_cast<size_t>(i)];
                pa.machine_of[static_cast<size_t>(perm[static_cast<size_t>(i)])] =
                    a.machine_of[static_cast<size_t>(i)];
            }
            // compare exact comparable completion values as sorted multisets
            auto comparable = [&](const Instance& in, const Assignment& st) {
                std::vector<Rat> vals;
                for (int i = 0; i < in.n; ++i) {
                    Rat key = cost_key(cfg, in, st, i, st.machine_of[i]);
                    vals.push_back(uses_parameter_p(mech) ? Rat(key / min_load(in, i)) : key);
                }
                std::sort(vals.begin(), vals.end());
                return vals;
            };
            CHECK(comparable(inst, a) == comparable(permuted, pa));
        }
    }
}

TEST_CASE("argmin of cost keys matches argmin of completion times") {
    TestRng rng(35);
    for (Mechanism mech :
         {Mechanism::Makespan, Mechanism::ShortestFirst, Mechanism::LongestFirst,
          Mechanism::Randomized, Mechanism::Acoord, Mechanism::Bcoord, Mechanism::Ccoord}) {
        for (int trial = 0; trial < 30; ++trial) {
            PolicyConfig cfg{mech, static_cast<int>(rng.uniform(1, 3))};
            Instance inst = rng.instance(4, 4);
            Assignment a = rng.assignment(inst);
            for (int i = 0; i < inst.n; ++i) {
                auto strategies = inst.strategies(i);
                int best_key = strategies[0];
                Rat best_key_val = cost_key(cfg, inst, a, i, strategies[0]);
                int best_time = strategies[0];
                double best_time_val = hypothetical_completion(cfg, inst, a, i, strategies[0]);
                double second_gap = 1e300;
                for (size_t t = 1; t < strategies.size(); ++t) {
                    int j = strategies[t];
                    Rat key = cost_key(cfg, inst, a, i, j);
                    if (key < best_key_val) {
                        best_key_val = key;
                        best_key = j;
                    }
                    double time = hypothetical_completion(cfg, inst, a, i, j);
                    if (time < best_time_val) {
                        second_gap = best_time_val - time;
                        best_time_val = time;
                        best_time = j;
                    } else {
                        second_gap = std::min(second_gap, time - best_time_val);
                    }
                }
                // only decisive when the real-valued gap is clear
                if (second_gap > 1e-6) CHECK(best_key == best_time);
            }
        }
    }
}

TEST_CASE("feasibility holds for every policy on random states") {
    TestRng rng(36);
    for (Mechanism mech :
         {Mechanism::Makespan, Mechanism::ShortestFirst, Mechanism::LongestFirst,
          Mechanism::Randomized, Mechanism::Acoord, Mechanism::Bcoord, Mechanism::Ccoord}) {
        for (int trial = 0; trial < 100; ++trial) {
            PolicyConfig cfg{mech, static_cast<int>(rng.uniform(1, 3))};
            Instance inst = rng.instance(6, 4);
            Assignment a = rng.assignment(inst);
            FeasibilityReport report = check_feasibility(cfg, inst, a);
            CHECK(report.ok);
        }
    }
}

TEST_CASE("equal loads stay feasible via the ID tie-break") {
    Instance inst;
    inst.n = 2;
    inst.m = 1;
    inst.loads = {{Rat(1)}, {Rat(1)}};
    Assignment a{{0, 0}};
    CHECK(check_feasibility({Mechanism::ShortestFirst, 0}, inst, a).ok);
    CHECK(check_feasibility({Mechanism::Makespan, 0}, inst, a).ok);
}
