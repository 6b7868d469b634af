// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/solids.hpp"

#include <cmath>
#include <stdexcept>

namespace symgen {

PointCloud extrude(const std::vector<Vec2>& points2d, const ExtrusionSpec& spec, Rng& rng) {
    if (points2d.empty()) throw std::invalid_argument("extrude: empty input");
    if (!(spec.l_z > 0.0)) throw std::invalid_argument("extrude: l_z must be positive");
    PointCloud out;
    out.reserve(points2d.size());
    const double lz = spec.l_z;
    for (const Vec2& p : points2d) {
        double z = rng.uniform01();
        double height = lz * z - lz / 2.0;
        if (spec.kind == ExtrusionKind::Cylindrical)
            out.push_back({p.x, p.y, height});
        else
            out.push_back({z * p.x, z * p.y, height});
    }
    return out;
}

PointCloud revolve(const std::vector<Vec2>& profile, const RevolutionSpec& spec, Rng& rng) {
    if (profile.empty()) throw std::invalid_argument("revolve: empty profile");
    if (spec.rotation_count < 1)
        throw std::invalid_argument("revolve: rotation count must be >= 1");
    if (spec.jitter_deg < 0.0) throw std::invalid_argument("revolve: negative jitter");
    const double jitter = deg_to_rad(spec.jitter_deg);
    const int t_count = spec.rotation_count;
    PointCloud out;
    out.reserve(profile.size() * t_count);
    for (const Vec2& p : profile) {
        for (int j = 0; j < t_count; ++j) {
            double theta = kTwoPi * j / t_count;
            if (jitter > 0.0) theta += rng.uniform(-jitter, jitter);
            out.push_back({p.x * std::cos(theta), p.y, -p.x * std::sin(theta)});
        }
    }
    return out;
}

std::pair<PointCloud, SolidProvenance> build_solid(const CurveSpec& spec, const SolidConfig& cfg,
                                                   Rng& rng) {
    SolidProvenance prov;
    if (spec.family == CurveFamily::Bezier) {
        std::vector<Vec2> profile = sample_curve(spec, cfg.profile_points(), rng);
        prov.construction = Construction::Revolution;
        return {revolve(profile, cfg.revolution, rng), prov};
    }
    std::vector<Vec2> points = sample_curve(spec, cfg.extrusion_points(), rng);
    ExtrusionSpec ex;
    ex.l_z = rng.uniform(cfg.lz_min, cfg.lz_max);
    ex.kind = rng.bernoulli(cfg.pr_conic) ? ExtrusionKind::Conical : ExtrusionKind::Cylindrical;
    prov.construction = ex.kind == ExtrusionKind::Conical ? Construction::Conical
                                                          : Construction::Cylindrical;
    prov.l_z = ex.l_z;
    return {extrude(points, ex, rng), prov};
}

}  // namespace symgen
