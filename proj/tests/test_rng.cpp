// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "symgen/rng.hpp"

using namespace symgen;

TEST_CASE("equal stream keys give identical sequences") {
    Rng a(42, 7, RngStream::Solid);
    Rng b(42, 7, RngStream::Solid);
    for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("different ids and tags give different sequences") {
    Rng base(42, 7, RngStream::Solid);
    Rng other_id(42, 8, RngStream::Solid);
    Rng other_tag(42, 7, RngStream::Perturb);
    Rng other_seed(43, 7, RngStream::Solid);
    int same_id = 0, same_tag = 0, same_seed = 0;
    for (int i = 0; i < 64; ++i) {
        uint64_t v = base.next_u64();
        same_id += v == other_id.next_u64();
        same_tag += v == other_tag.next_u64();
        same_seed += v == other_seed.next_u64();
    }
    CHECK(same_id == 0);
    CHECK(same_tag == 0);
    CHECK(same_seed == 0);
}

TEST_CASE("uniform01 stays in [0,1) and looks uniform") {
    Rng rng(1, 0, RngStream::General);
    const int n = 100000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = rng.uniform01();
        REQUIRE(v >= 0.0);
        REQUIRE(v < 1.0);
        sum += v;
    }
    CHECK(sum / n == doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("uniform_int covers the inclusive range uniformly") {
    Rng rng(1, 1, RngStream::General);
    std::vector<int> counts(7, 0);
    const int n = 70000;
    for (int i = 0; i < n; ++i) {
        int64_t v = rng.uniform_int(3, 9);
        REQUIRE(v >= 3);
        REQUIRE(v <= 9);
        ++counts[v - 3];
    }
    for (int c : counts) CHECK(std::abs(c / double(n) - 1.0 / 7) < 0.01);
}

TEST_CASE("normal has the requested moments") {
    Rng rng(1, 2, RngStream::General);
    const int n = 100000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        double v = rng.normal(0.0, 0.05);
        sum += v;
        sum_sq += v * v;
    }
    CHECK(std::abs(sum / n) < 0.001);
    CHECK(std::sqrt(sum_sq / n) == doctest::Approx(0.05).epsilon(0.02));
}

TEST_CASE("split derives an unrelated stream") {
    Rng parent(9, 3, RngStream::General);
    Rng child_a = parent.split(1);
    Rng child_b = parent.split(2);
    std::set<uint64_t> seen;
    for (int i = 0; i < 32; ++i) {
        seen.insert(child_a.next_u64());
        seen.insert(child_b.next_u64());
    }
    CHECK(seen.size() == 64);
}

TEST_CASE("bernoulli frequency tracks p") {
    Rng rng(5, 0, RngStream::General);
    int hits = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) hits += rng.bernoulli(0.8);
    CHECK(hits / double(n) == doctest::Approx(0.8).epsilon(0.01));
}
