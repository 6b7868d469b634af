// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symgen/geometry.hpp"
#include "symgen/rng.hpp"

namespace symgen {

/// The six perturbation regimes, P0..P5 in generation order.
enum class PerturbationKind {
    Clean,
    Uniform,
    Gaussian,
    Undersampling,
    UniformPlusUnder,
    GaussianPlusUnder,
};

inline constexpr int kPerturbationKindCount = 6;

/// File-name tag, e.g. "undersampling+uniform".
const char* perturbation_tag(PerturbationKind k);
std::optional<PerturbationKind> perturbation_from_tag(const std::string& tag);

/// Everything that was drawn while perturbing, enough to audit the result.
struct PerturbationDraw {
    std::optional<double> noise_fraction;     // in [0.3, 0.8]
    std::optional<int> noise_scale;           // n of U(-1/n,1/n) or N(0,1/n^2)
    std::vector<uint32_t> noisy_indices;      // selection mask, input indexing
    std::optional<double> undersample_fraction;
    std::vector<uint32_t> removed_indices;    // input indexing, ascending
};

/// Apply one perturbation regime. Noise first, then an independently drawn
/// undersampling for the combined kinds. Requires at least 5 points.
std::pair<PointCloud, PerturbationDraw> apply_perturbation(const PointCloud& cloud,
                                                           PerturbationKind kind, Rng& rng);

// Building blocks with explicit draws, used by apply_perturbation and by
// statistical tests that need to pin the noise scale.

/// Perturb floor(|cloud| * fraction) random points by U(-1/n, 1/n) per
/// coordinate. Returns the selected input indices.
std::vector<uint32_t> add_uniform_noise(PointCloud& cloud, double fraction, int n, Rng& rng);

/// Same selection rule with N(0, 1/n^2) shifts.
std::vector<uint32_t> add_gaussian_noise(PointCloud& cloud, double fraction, int n, Rng& rng);

/// Remove floor(|cloud| * fraction) random points, keeping input order.
/// Returns the removed input indices, ascending.
std::vector<uint32_t> undersample(PointCloud& cloud, double fraction, Rng& rng);

}  // namespace symgen
