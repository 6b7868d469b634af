// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "symgen/curves.hpp"
#include "symgen/geometry.hpp"
#include "symgen/rng.hpp"
#include "symgen/symmetry.hpp"

namespace symgen {

enum class ExtrusionKind { Cylindrical, Conical };

struct ExtrusionSpec {
    ExtrusionKind kind = ExtrusionKind::Cylindrical;
    double l_z = 1.0;  // extent along Z, > 0
};

struct RevolutionSpec {
    int rotation_count = 100;  // T, rotations per profile point
    double jitter_deg = 3.4;   // half-width of the angular jitter
};

/// Generation knobs of the curve-to-solid step.
struct SolidConfig {
    int n = 80;            // N; extrusions sample N^2 curve points
    double lz_min = 0.5;   // extrusion size draw l_z ~ U(lz_min, lz_max)
    double lz_max = 2.0;
    double pr_conic = 0.5;
    RevolutionSpec revolution;

    int extrusion_points() const { return n * n; }
    int profile_points() const {
        return (n * n + revolution.rotation_count - 1) / revolution.rotation_count;
    }
};

/// What build_solid actually did, for the manifest and GT lifting.
struct SolidProvenance {
    Construction construction = Construction::Cylindrical;
    double l_z = 0.0;  // extrusions only
};

/// Lift 2D samples to 3D by distributing copies along Z. Cylindrical keeps
/// (x, y); conical scales the cross-section linearly with height.
PointCloud extrude(const std::vector<Vec2>& points2d, const ExtrusionSpec& spec, Rng& rng);

/// Rotate each profile point about the Y axis at T jittered regular angles:
/// (x, y, 0) -> (x cos t, y, -x sin t).
PointCloud revolve(const std::vector<Vec2>& profile, const RevolutionSpec& spec, Rng& rng);

/// Full curve-to-cloud step: sample the curve, then extrude (non-Bezier,
/// conical with probability pr_conic) or revolve (Bezier).
std::pair<PointCloud, SolidProvenance> build_solid(const CurveSpec& spec, const SolidConfig& cfg,
                                                   Rng& rng);

}  // namespace symgen
