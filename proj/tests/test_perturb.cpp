// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "symgen/perturb.hpp"

using namespace symgen;

namespace {

PointCloud grid_cloud(size_t n) {
    PointCloud cloud;
    cloud.reserve(n);
    for (size_t i = 0; i < n; ++i)
        cloud.push_back({static_cast<double>(i % 40), static_cast<double>(i / 40), 0.5});
    return cloud;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    std::sort(samples.begin(), samples.end());
    double d = 0.0;
    const double n = static_cast<double>(samples.size());
    for (size_t i = 0; i < samples.size(); ++i) {
        double c = cdf(samples[i]);
        d = std::max(d, std::abs((i + 1) / n - c));
        d = std::max(d, std::abs(c - i / n));
    }
    return d;
}

constexpr double kKsAlpha01 = 1.628;

}  // namespace

TEST_CASE("perturbation tags match the published file names") {
    CHECK(std::string(perturbation_tag(PerturbationKind::Clean)) == "clean");
    CHECK(std::string(perturbation_tag(PerturbationKind::Uniform)) == "uniform");
    CHECK(std::string(perturbation_tag(PerturbationKind::Gaussian)) == "gaussian");
    CHECK(std::string(perturbation_tag(PerturbationKind::Undersampling)) == "undersampling");
    CHECK(std::string(perturbation_tag(PerturbationKind::UniformPlusUnder)) ==
          "undersampling+uniform");
    CHECK(std::string(perturbation_tag(PerturbationKind::GaussianPlusUnder)) ==
          "undersampling+gaussian");
    for (int i = 0; i < kPerturbationKindCount; ++i) {
        auto kind = static_cast<PerturbationKind>(i);
        CHECK(perturbation_from_tag(perturbation_tag(kind)) == kind);
    }
    CHECK(!perturbation_from_tag("noisy").has_value());
}

TEST_CASE("clean is the identity") {
    PointCloud cloud = grid_cloud(100);
    Rng rng(1, 0, RngStream::Perturb);
    auto [out, draw] = apply_perturbation(cloud, PerturbationKind::Clean, rng);
    REQUIRE(out.size() == cloud.size());
    for (size_t i = 0; i < cloud.size(); ++i) {
        CHECK(out[i].x == cloud[i].x);
        CHECK(out[i].y == cloud[i].y);
        CHECK(out[i].z == cloud[i].z);
    }
    CHECK(!draw.noise_fraction);
    CHECK(!draw.undersample_fraction);
}

TEST_CASE("noise kinds keep cardinality and touch only the selection") {
    PointCloud cloud = grid_cloud(6400);
    Rng rng(2, 0, RngStream::Perturb);
    auto [out, draw] = apply_perturbation(cloud, PerturbationKind::Uniform, rng);
    REQUIRE(out.size() == cloud.size());
    REQUIRE(draw.noise_fraction);
    CHECK(*draw.noise_fraction >= 0.3);
    CHECK(*draw.noise_fraction <= 0.8);
    size_t expected = static_cast<size_t>(cloud.size() * *draw.noise_fraction);
    CHECK(draw.noisy_indices.size() == expected);

    std::set<uint32_t> selected(draw.noisy_indices.begin(), draw.noisy_indices.end());
    CHECK(selected.size() == draw.noisy_indices.size());
    size_t moved = 0;
    for (size_t i = 0; i < cloud.size(); ++i) {
        bool identical = out[i].x == cloud[i].x && out[i].y == cloud[i].y && out[i].z == cloud[i].z;
        if (!identical) {
            ++moved;
            CHECK(selected.count(static_cast<uint32_t>(i)) == 1);
        }
        if (!selected.count(static_cast<uint32_t>(i))) CHECK(identical);
    }
    CHECK(moved <= selected.size());
    CHECK(moved >= selected.size() - 2);  // a zero draw on all three axes is nearly impossible
}

TEST_CASE("uniform displacement bound follows the drawn scale") {
    PointCloud cloud = grid_cloud(6400);
    SUBCASE("n = 15 caps each coordinate shift at 1/15") {
        PointCloud noisy = cloud;
        Rng rng(3, 0, RngStream::Perturb);
        add_uniform_noise(noisy, 0.8, 15, rng);
        for (size_t i = 0; i < cloud.size(); ++i) {
            CHECK(std::abs(noisy[i].x - cloud[i].x) <= 1.0 / 15);
            CHECK(std::abs(noisy[i].y - cloud[i].y) <= 1.0 / 15);
            CHECK(std::abs(noisy[i].z - cloud[i].z) <= 1.0 / 15);
        }
    }
    SUBCASE("the drawn n is from the uniform table") {
        for (int trial = 0; trial < 50; ++trial) {
            Rng rng(4, trial, RngStream::Perturb);
            auto [out, draw] = apply_perturbation(cloud, PerturbationKind::Uniform, rng);
            int n = *draw.noise_scale;
            CHECK((n == 15 || n == 17 || n == 19 || n == 20));
        }
        for (int trial = 0; trial < 50; ++trial) {
            Rng rng(5, trial, RngStream::Perturb);
            auto [out, draw] = apply_perturbation(cloud, PerturbationKind::Gaussian, rng);
            int n = *draw.noise_scale;
            CHECK((n == 20 || n == 23 || n == 27 || n == 30));
        }
    }
}

TEST_CASE("undersampling removes floor(n*f) points and keeps order") {
    PointCloud cloud = grid_cloud(6400);
    SUBCASE("a fixed fraction of one half") {
        PointCloud out = cloud;
        Rng rng(6, 0, RngStream::Perturb);
        std::vector<uint32_t> removed = undersample(out, 0.5, rng);
        CHECK(removed.size() == 3200);
        CHECK(out.size() == 3200);
        CHECK(std::is_sorted(removed.begin(), removed.end()));
    }
    SUBCASE("drawn fractions stay in [0.3, 0.8]") {
        for (int trial = 0; trial < 100; ++trial) {
            Rng rng(7, trial, RngStream::Perturb);
            auto [out, draw] = apply_perturbation(cloud, PerturbationKind::Undersampling, rng);
            REQUIRE(draw.undersample_fraction);
            double f = *draw.undersample_fraction;
            CHECK(f >= 0.3);
            CHECK(f <= 0.8);
            size_t removed = static_cast<size_t>(cloud.size() * f);
            CHECK(out.size() == cloud.size() - removed);
            // ceil(n * (1 - f)) equals n - floor(n * f)
            CHECK(out.size() ==
                  static_cast<size_t>(std::ceil(cloud.size() * (1.0 - f) - 1e-9)));
        }
    }
    SUBCASE("survivors keep their input order") {
        PointCloud out = cloud;
        Rng rng(8, 0, RngStream::Perturb);
        undersample(out, 0.4, rng);
        for (size_t i = 1; i < out.size(); ++i) {
            double prev = out[i - 1].y * 40 + out[i - 1].x;
            double cur = out[i].y * 40 + out[i].x;
            CHECK(cur > prev);
        }
    }
}

TEST_CASE("combined kinds draw noise and undersampling independently") {
    PointCloud cloud = grid_cloud(6400);
    Rng rng(9, 0, RngStream::Perturb);
    auto [out, draw] = apply_perturbation(cloud, PerturbationKind::GaussianPlusUnder, rng);
    REQUIRE(draw.noise_fraction);
    REQUIRE(draw.undersample_fraction);
    size_t removed = static_cast<size_t>(cloud.size() * *draw.undersample_fraction);
    CHECK(out.size() == cloud.size() - removed);
    CHECK(draw.noisy_indices.size() ==
          static_cast<size_t>(cloud.size() * *draw.noise_fraction));
}

TEST_CASE("uniform noise passes a KS test at alpha=0.01") {
    PointCloud cloud = grid_cloud(6400);
    PointCloud noisy = cloud;
    Rng rng(10, 0, RngStream::Perturb);
    std::vector<uint32_t> sel = add_uniform_noise(noisy, 0.8, 15, rng);
    std::vector<double> displacements;
    for (uint32_t i : sel) {
        displacements.push_back(noisy[i].x - cloud[i].x);
        displacements.push_back(noisy[i].y - cloud[i].y);
        displacements.push_back(noisy[i].z - cloud[i].z);
    }
    REQUIRE(displacements.size() >= 10000);
    double d = ks_statistic(displacements, [](double x) {
        double lo = -1.0 / 15, hi = 1.0 / 15;
        return std::clamp((x - lo) / (hi - lo), 0.0, 1.0);
    });
    CHECK(d < kKsAlpha01 / std::sqrt(displacements.size()));
}

TEST_CASE("gaussian noise passes a KS test at alpha=0.01") {
    PointCloud cloud = grid_cloud(6400);
    PointCloud noisy = cloud;
    Rng rng(11, 0, RngStream::Perturb);
    std::vector<uint32_t> sel = add_gaussian_noise(noisy, 0.8, 20, rng);
    std::vector<double> displacements;
    for (uint32_t i : sel) {
        displacements.push_back(noisy[i].x - cloud[i].x);
        displacements.push_back(noisy[i].y - cloud[i].y);
        displacements.push_back(noisy[i].z - cloud[i].z);
    }
    REQUIRE(displacements.size() >= 10000);
    const double sigma = 1.0 / 20;
    double d = ks_statistic(displacements, [sigma](double x) {
        return 0.5 * std::erfc(-x / (sigma * std::sqrt(2.0)));
    });
    CHECK(d < kKsAlpha01 / std::sqrt(displacements.size()));
}

TEST_CASE("perturbation is deterministic under a fixed seed") {
    PointCloud cloud = grid_cloud(500);
    for (int kind = 0; kind < kPerturbationKindCount; ++kind) {
        Rng r1(12, 42, RngStream::Perturb), r2(12, 42, RngStream::Perturb);
        auto [a, da] = apply_perturbation(cloud, static_cast<PerturbationKind>(kind), r1);
        auto [b, db] = apply_perturbation(cloud, static_cast<PerturbationKind>(kind), r2);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(a[i].x == b[i].x);
            CHECK(a[i].y == b[i].y);
            CHECK(a[i].z == b[i].z);
        }
    }
}

TEST_CASE("tiny clouds are rejected") {
    PointCloud cloud = grid_cloud(4);
    Rng rng(13, 0, RngStream::Perturb);
    CHECK_THROWS_AS(apply_perturbation(cloud, PerturbationKind::Uniform, rng),
                    std::invalid_argument);
}
