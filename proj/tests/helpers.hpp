#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coordmech/analysis.hpp"

namespace coordmech::testing {

// Deterministic draws; avoids std::uniform_int_distribution so seeds mean
// the same thing on every standard library.
struct TestRng {
    std::mt19937_64 rng;

    explicit TestRng(std::uint64_t seed) : rng(seed) {}

    long uniform(long lo, long hi) {
        return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    Rat rational(long max_num, long max_den) {
        Rat v(uniform(0, max_num), uniform(1, max_den));
        v.canonicalize();
        return v;
    }

    Rat positive_rational(long max_num, long max_den) {
        Rat v(uniform(1, max_num), uniform(1, max_den));
        v.canonicalize();
        return v;
    }

    std::vector<Rat> multiset(int max_size, long max_num, long max_den) {
        std::vector<Rat> out;
        int size = static_cast<int>(uniform(0, max_size));
        for (int i = 0; i < size; ++i) out.push_back(rational(max_num, max_den));
        return out;
    }

    Instance instance(int n_max, int m_max, double inf_prob = 0.2) {
        RandomInstanceSpec spec;
        spec.n = static_cast<int>(uniform(1, n_max));
        spec.m = static_cast<int>(uniform(1, m_max));
        spec.seed = rng();
        spec.inf_probability = inf_prob;
        return random_instance(spec);
    }

    Assignment assignment(const Instance& inst) {
        Assignment a;
        for (int i = 0; i < inst.n; ++i) {
            auto s = inst.strategies(i);
            a.machine_of.push_back(s[static_cast<size_t>(uniform(0, static_cast<long>(s.size()) - 1))]);
        }
        return a;
    }
};

} // namespace coordmech::testing
