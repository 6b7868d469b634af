// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/perturb.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace symgen {

const char* perturbation_tag(PerturbationKind k) {
    switch (k) {
        case PerturbationKind::Clean: return "clean";
        case PerturbationKind::Uniform: return "uniform";
        case PerturbationKind::Gaussian: return "gaussian";
        case PerturbationKind::Undersampling: return "undersampling";
        case PerturbationKind::UniformPlusUnder: return "undersampling+uniform";
        case PerturbationKind::GaussianPlusUnder: return "undersampling+gaussian";
    }
    return "unknown";
}

std::optional<PerturbationKind> perturbation_from_tag(const std::string& tag) {
    for (int i = 0; i < kPerturbationKindCount; ++i) {
        auto k = static_cast<PerturbationKind>(i);
        if (tag == perturbation_tag(k)) return k;
    }
    return std::nullopt;
}

namespace {

constexpr double kFractionLo = 0.3;
constexpr double kFractionHi = 0.8;
constexpr int kUniformScales[] = {15, 17, 19, 20};
constexpr int kGaussianScales[] = {20, 23, 27, 30};

/// First `count` entries of a partial Fisher-Yates shuffle of 0..size-1.
std::vector<uint32_t> pick_indices(size_t size, size_t count, Rng& rng) {
    std::vector<uint32_t> idx(size);
    std::iota(idx.begin(), idx.end(), 0u);
    for (size_t i = 0; i < count; ++i) {
        size_t j = i + static_cast<size_t>(rng.uniform_int(0, static_cast<int64_t>(size - i - 1)));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    return idx;
}

size_t selection_count(size_t size, double fraction) {
    return static_cast<size_t>(static_cast<double>(size) * fraction);
}

}  // namespace

std::vector<uint32_t> add_uniform_noise(PointCloud& cloud, double fraction, int n, Rng& rng) {
    std::vector<uint32_t> sel = pick_indices(cloud.size(), selection_count(cloud.size(), fraction), rng);
    const double half = 1.0 / n;
    for (uint32_t i : sel) {
        cloud[i].x += rng.uniform(-half, half);
        cloud[i].y += rng.uniform(-half, half);
        cloud[i].z += rng.uniform(-half, half);
    }
    return sel;
}

std::vector<uint32_t> add_gaussian_noise(PointCloud& cloud, double fraction, int n, Rng& rng) {
    std::vector<uint32_t> sel = pick_indices(cloud.size(), selection_count(cloud.size(), fraction), rng);
    const double sigma = 1.0 / n;
    for (uint32_t i : sel) {
        cloud[i].x += rng.normal(0.0, sigma);
        cloud[i].y += rng.normal(0.0, sigma);
        cloud[i].z += rng.normal(0.0, sigma);
    }
    return sel;
}

std::vector<uint32_t> undersample(PointCloud& cloud, double fraction, Rng& rng) {
    std::vector<uint32_t> removed =
        pick_indices(cloud.size(), selection_count(cloud.size(), fraction), rng);
    std::sort(removed.begin(), removed.end());
    PointCloud kept;
    kept.reserve(cloud.size() - removed.size());
    size_t r = 0;
    for (size_t i = 0; i < cloud.size(); ++i) {
        if (r < removed.size() && removed[r] == i) {
            ++r;
            continue;
        }
        kept.push_back(cloud[i]);
    }
    cloud = std::move(kept);
    return removed;
}

std::pair<PointCloud, PerturbationDraw> apply_perturbation(const PointCloud& cloud,
                                                           PerturbationKind kind, Rng& rng) {
    if (cloud.size() < 5) throw std::invalid_argument("apply_perturbation: cloud too small");
    PointCloud out = cloud;
    PerturbationDraw draw;

    auto draw_scale = [&rng](const int (&scales)[4]) {
        return scales[rng.uniform_int(0, 3)];
    };

    switch (kind) {
        case PerturbationKind::Clean: break;
        case PerturbationKind::Uniform:
        case PerturbationKind::UniformPlusUnder: {
            draw.noise_fraction = rng.uniform(kFractionLo, kFractionHi);
            draw.noise_scale = draw_scale(kUniformScales);
            draw.noisy_indices =
                add_uniform_noise(out, *draw.noise_fraction, *draw.noise_scale, rng);
            break;
        }
        case PerturbationKind::Gaussian:
        case PerturbationKind::GaussianPlusUnder: {
            draw.noise_fraction = rng.uniform(kFractionLo, kFractionHi);
            draw.noise_scale = draw_scale(kGaussianScales);
            draw.noisy_indices =
                add_gaussian_noise(out, *draw.noise_fraction, *draw.noise_scale, rng);
            break;
        }
        case PerturbationKind::Undersampling: break;
    }

    if (kind == PerturbationKind::Undersampling || kind == PerturbationKind::UniformPlusUnder ||
        kind == PerturbationKind::GaussianPlusUnder) {
        draw.undersample_fraction = rng.uniform(kFractionLo, kFractionHi);
        draw.removed_indices = undersample(out, *draw.undersample_fraction, rng);
    }
    return {std::move(out), std::move(draw)};
}

}  // namespace symgen
