// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>
#include <vector>

#include "symgen/geometry.hpp"
#include "symgen/rng.hpp"

namespace symgen {

/// The ten plane-curve families. Ellipse is the source of the "cylinder"
/// dataset class, Bezier the source of the "revolution" class.
enum class CurveFamily {
    Citrus,
    MConvexities,
    Lemniscate,
    EggKeplero,
    Mouth,
    GeometricPetal,
    Astroid,
    Ellipse,
    Square,
    Bezier,
};

inline constexpr int kCurveFamilyCount = 10;

const char* family_name(CurveFamily f);

/// Per-family parameter set. Only the symbols meaningful for the family are
/// used; the rest keep their defaults. Bezier control points have z = 0 by
/// construction.
struct CurveParams {
    double a = 1.0;
    double b = 1.0;
    int m = 1;
    std::array<Vec3, 4> control_points{};
};

struct CurveSpec {
    CurveFamily family = CurveFamily::Citrus;
    CurveParams params;
};

/// Branch selector for the Citrus square root; ignored by other families.
enum class Branch { Positive, Negative };

struct Rotation2D {
    enum class Kind { None, Discrete, Continuous };
    Kind kind = Kind::None;
    double angle = 0.0;  // valid only when kind == Discrete

    static Rotation2D none() { return {}; }
    static Rotation2D discrete(double angle) { return {Kind::Discrete, angle}; }
    static Rotation2D continuous() { return {Kind::Continuous, 0.0}; }
};

/// 2D symmetries of a plane curve: mirror lines through the origin given by
/// their angle in [0, pi), plus an optional rotational symmetry about the
/// origin.
struct Symmetry2D {
    std::vector<double> reflection_line_angles;  // strictly increasing, in [0, pi)
    Rotation2D rotation;
};

/// Parameter interval of the curve's common variable t.
struct CurveDomain {
    double lo = 0.0;
    double hi = 1.0;
    double length() const { return hi - lo; }
};

CurveDomain curve_domain(const CurveSpec& spec);

/// Evaluate the curve's closed form at t. Throws std::domain_error when t is
/// outside the family's domain.
Vec2 eval_curve(const CurveSpec& spec, double t, Branch branch = Branch::Positive);

/// Draw `count` points P(t_i) with t_i uniform over the domain; the Citrus
/// branch sign is drawn uniformly per point.
std::vector<Vec2> sample_curve(const CurveSpec& spec, int count, Rng& rng);

/// `count` points at regular t positions (both Citrus branches alternate).
/// Deterministic; used by validators and tests.
std::vector<Vec2> sample_curve_regular(const CurveSpec& spec, int count);

/// The mathematically valid 2D symmetry set for the concrete parameters.
/// Bezier curves return an empty set.
Symmetry2D curve_symmetries_2d(const CurveSpec& spec);

/// Draw the per-family parameter ranges used for dataset generation.
CurveParams sample_params(CurveFamily family, Rng& rng);

}  // namespace symgen
