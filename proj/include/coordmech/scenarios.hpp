#pragma once

#include <string>
#include <vector>

#include "coordmech/policies.hpp"

namespace coordmech {

// The three improving-move cycle counterexamples, bit-identical to their
// published tables. Jobs A, B, C, ... are IDs 0, 1, 2, ...; machines are
// 0-based.
struct ScenarioBundle {
    std::string name;
    Instance instance;
    PolicyConfig policy;
    std::vector<Assignment> states; // closed: first == last
};

namespace detail {

inline Instance make_instance(int m, const std::vector<std::vector<const char*>>& rows) {
    Instance inst;
    inst.n = static_cast<int>(rows.size());
    inst.m = m;
    for (const auto& row : rows) {
        std::vector<LoadEntry> r;
        for (const char* e : row)
            r.push_back(std::string(e) == "inf" ? LoadEntry{} : LoadEntry{parse_rational(e)});
        inst.loads.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

inline std::vector<Assignment> make_states(const std::vector<std::vector<int>>& raw) {
    std::vector<Assignment> states;
    for (const auto& s : raw) states.push_back(Assignment{s});
    return states;
}

} // namespace detail

inline std::vector<std::string> scenario_names() {
    return {"longestfirst-cycle", "randomized-cycle", "bcoord-cycle"};
}

inline ScenarioBundle load_scenario(const std::string& name) {
    if (name == "longestfirst-cycle") {
        // Jobs A, B, C over 4 machines; the 9-move cycle starts and ends at
        // (C, B, A, -). B's first move drops its completion from 10 to 9.
        return {
            name,
            detail::make_instance(4, {{"14", "inf", "3", "7"},
                                      {"inf", "10", "9", "8"},
                                      {"5", "inf", "10", "9"}}),
            {Mechanism::LongestFirst, 1},
            detail::make_states({{2, 1, 0},
                                 {2, 2, 0},
                                 {3, 2, 0},
                                 {3, 3, 0},
                                 {0, 3, 0},
                                 {0, 3, 2},
                                 {2, 3, 2},
                                 {2, 3, 3},
                                 {2, 1, 3},
                                 {2, 1, 0}}),
        };
    }
    if (name == "randomized-cycle") {
        // Jobs A..G; D, E, F, G are pinned to machines 1..4 by infinite
        // loads elsewhere. Every move improves the expected completion by
        // exactly 1 (the doubled cost key by exactly 2).
        return {
            name,
            detail::make_instance(4, {{"80", "inf", "2", "2"},
                                      {"inf", "171", "154", "76"},
                                      {"100", "inf", "124", "10"},
                                      {"2", "inf", "inf", "inf"},
                                      {"inf", "2", "inf", "inf"},
                                      {"inf", "inf", "32", "inf"},
                                      {"inf", "inf", "inf", "184"}}),
            {Mechanism::Randomized, 1},
            detail::make_states({{2, 1, 0, 0, 1, 2, 3},
                                 {2, 2, 0, 0, 1, 2, 3},
                                 {3, 2, 0, 0, 1, 2, 3},
                                 {3, 3, 0, 0, 1, 2, 3},
                                 {0, 3, 0, 0, 1, 2, 3},
                                 {0, 3, 2, 0, 1, 2, 3},
                                 {2, 3, 2, 0, 1, 2, 3},
                                 {2, 3, 3, 0, 1, 2, 3},
                                 {2, 1, 3, 0, 1, 2, 3},
                                 {2, 1, 0, 0, 1, 2, 3}}),
        };
    }
    if (name == "bcoord-cycle") {
        // Jobs A..E under BCOORD with p = 2; D and E are pinned. The first
        // move drops B's exact cost key from 8.2481^3 to
        // 0.6302 * (0.0745 + 0.6302 + 29.1331)^2.
        return {
            name,
            detail::make_instance(4, {{"4.0202", "inf", "0.0745", "2.4447"},
                                      {"inf", "8.2481", "0.6302", "5.1781"},
                                      {"4.0741", "inf", "0.3078", "2.4734"},
                                      {"inf", "inf", "29.1331", "inf"},
                                      {"inf", "inf", "inf", "2.7592"}}),
            {Mechanism::Bcoord, 2},
            detail::make_states({{2, 1, 0, 2, 3},
                                 {2, 2, 0, 2, 3},
                                 {3, 2, 0, 2, 3},
                                 {3, 3, 0, 2, 3},
                                 {0, 3, 0, 2, 3},
                                 {0, 3, 2, 2, 3},
                                 {2, 3, 2, 2, 3},
                                 {2, 3, 3, 2, 3},
                                 {2, 1, 3, 2, 3},
                                 {2, 1, 0, 2, 3}}),
        };
    }
    throw DomainError("unknown scenario: " + name);
}

} // namespace coordmech
