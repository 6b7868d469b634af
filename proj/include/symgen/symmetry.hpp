// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "symgen/curves.hpp"
#include "symgen/geometry.hpp"
#include "symgen/rng.hpp"

namespace symgen {

/// Mirror plane given by a unit normal and a point on the plane.
struct PlaneSymmetry {
    Vec3 normal;
    Vec3 point;
};

inline constexpr double kContinuousPeriod = std::numeric_limits<double>::infinity();

/// Rotation axis given by a unit direction, a point on the axis, and the
/// period in radians; an infinite period marks continuous symmetry.
struct AxisSymmetry {
    Vec3 direction;
    Vec3 point;
    double period = kContinuousPeriod;

    bool continuous() const { return std::isinf(period); }
};

struct SymmetrySet {
    std::vector<PlaneSymmetry> planes;
    std::vector<AxisSymmetry> axes;

    size_t size() const { return planes.size() + axes.size(); }
};

/// How the 2D curve became a 3D solid; decides which symmetries survive.
enum class Construction { Cylindrical, Conical, Revolution };

/// Minimal emits only the verbatim 2D->3D lifting rules. Full (default)
/// additionally emits, for cylindrical extrusions, the mid-height mirror
/// plane and the in-plane 2-fold axes that the z-symmetric extrusion
/// carries. Conical extrusions break the z-flip, so Full equals Minimal
/// there.
enum class GtMode { Full, Minimal };

SymmetrySet lift_symmetries(const Symmetry2D& sym2d, Construction construction,
                            GtMode mode = GtMode::Full);

SymmetrySet transform_symmetries(const SymmetrySet& s, const RigidTransform& rt);

/// Reflect each point across the plane: q -> q - 2((q - c).n)n.
PointCloud reflect_points(const PointCloud& cloud, const PlaneSymmetry& plane);

/// Rodrigues rotation of each point about the axis line.
PointCloud rotate_about_axis(const PointCloud& cloud, const AxisSymmetry& axis, double angle);

/// Chamfer residual between the clean cloud and its symmetry image,
/// normalized by the cloud's bbox diagonal. Continuous axes take the worst
/// of eight random angles.
double validate_symmetry(const PointCloud& clean, const PlaneSymmetry& plane);
double validate_symmetry(const PointCloud& clean, const AxisSymmetry& axis, Rng& rng);

/// Residual of every entry of the set; same order as planes then axes.
std::vector<double> validate_symmetry_set(const PointCloud& clean, const SymmetrySet& s,
                                          Rng& rng);

/// Ground-truth residual threshold used across generation and validation.
inline constexpr double kGtResidualThreshold = 5e-3;

/// Parse failure, carrying the 1-based line number.
class GtParseError : public std::runtime_error {
  public:
    GtParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

  private:
    int line_;
};

/// Serialize to the ground-truth text format: a count line, then one line
/// per symmetry ("plane nx ny nz px py pz" or "axis dx dy dz px py pz
/// period"); continuous periods are written as the token "inf".
std::string write_gt(const SymmetrySet& s);

SymmetrySet parse_gt(const std::string& text);

}  // namespace symgen
