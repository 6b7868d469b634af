// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/symmetry.hpp"

#include <cmath>

#include "symgen/detail/text_scan.hpp"
#include "symgen/metrics.hpp"

namespace symgen {

namespace {

void require_unit(const Vec3& v, const char* what) {
    if (std::abs(v.norm() - 1.0) > 1e-6)
        throw std::invalid_argument(std::string(what) + " must be a unit vector");
}

/// Flip sign so the first component above noise is positive; plane normals
/// and axis directions are equivalent up to sign.
Vec3 canonical_sign(const Vec3& v) {
    constexpr double eps = 1e-12;
    double lead = std::abs(v.x) > eps ? v.x : (std::abs(v.y) > eps ? v.y : v.z);
    return lead < 0.0 ? -v : v;
}

PlaneSymmetry make_plane(const Vec3& normal, const Vec3& point) {
    return {canonical_sign(normal.normalized()), point};
}

AxisSymmetry make_axis(const Vec3& direction, const Vec3& point, double period) {
    return {canonical_sign(direction.normalized()), point, period};
}

}  // namespace

SymmetrySet lift_symmetries(const Symmetry2D& sym2d, Construction construction, GtMode mode) {
    SymmetrySet out;
    const Vec3 origin{};

    if (construction == Construction::Revolution) {
        // A randomized revolution keeps exactly one symmetry: the continuous
        // rotation about Y.
        out.axes.push_back(make_axis({0, 1, 0}, origin, kContinuousPeriod));
        return out;
    }

    for (double phi : sym2d.reflection_line_angles)
        out.planes.push_back(make_plane({-std::sin(phi), std::cos(phi), 0.0}, origin));

    switch (sym2d.rotation.kind) {
        case Rotation2D::Kind::Discrete:
            out.axes.push_back(make_axis({0, 0, 1}, origin, sym2d.rotation.angle));
            break;
        case Rotation2D::Kind::Continuous:
            out.axes.push_back(make_axis({0, 0, 1}, origin, kContinuousPeriod));
            break;
        case Rotation2D::Kind::None: break;
    }

    // The cylindrical extrusion is symmetric in z, which adds the mid-height
    // mirror and turns every 2D mirror line into an in-plane 2-fold axis.
    // The conical extrusion has an apex and loses both.
    if (mode == GtMode::Full && construction == Construction::Cylindrical) {
        out.planes.push_back(make_plane({0, 0, 1}, origin));
        for (double phi : sym2d.reflection_line_angles)
            out.axes.push_back(make_axis({std::cos(phi), std::sin(phi), 0.0}, origin, kPi));
    }
    return out;
}

SymmetrySet transform_symmetries(const SymmetrySet& s, const RigidTransform& rt) {
    if (rt.rotation.orthonormality_error() > 1e-9)
        throw std::invalid_argument("transform_symmetries: rotation not orthonormal");
    SymmetrySet out;
    out.planes.reserve(s.planes.size());
    out.axes.reserve(s.axes.size());
    for (const PlaneSymmetry& p : s.planes)
        out.planes.push_back(make_plane(rt.rotation * p.normal, rt.apply(p.point)));
    for (const AxisSymmetry& a : s.axes)
        out.axes.push_back(make_axis(rt.rotation * a.direction, rt.apply(a.point), a.period));
    return out;
}

PointCloud reflect_points(const PointCloud& cloud, const PlaneSymmetry& plane) {
    require_unit(plane.normal, "plane normal");
    PointCloud out;
    out.reserve(cloud.size());
    for (const Vec3& q : cloud) {
        double d = (q - plane.point).dot(plane.normal);
        out.push_back(q - plane.normal * (2.0 * d));
    }
    return out;
}

PointCloud rotate_about_axis(const PointCloud& cloud, const AxisSymmetry& axis, double angle) {
    require_unit(axis.direction, "axis direction");
    if (!std::isfinite(angle)) throw std::invalid_argument("rotation angle must be finite");
    Mat3 r = Mat3::axis_angle(axis.direction, angle);
    PointCloud out;
    out.reserve(cloud.size());
    for (const Vec3& q : cloud) out.push_back(r * (q - axis.point) + axis.point);
    return out;
}

namespace {

// Normalizer: rigid-invariant so that validation commutes with the record's
// rotation/translation; coincides with the bbox diagonal for box-like clouds.
double normalized_chamfer(const PointCloud& clean, const KdTree& clean_tree,
                          const PointCloud& image) {
    double diag = bounding_diameter(clean);
    if (diag == 0.0) diag = 1.0;  // degenerate single-point cloud
    KdTree image_tree(image);
    return chamfer(clean, clean_tree, image, image_tree) / diag;
}

}  // namespace

double validate_symmetry(const PointCloud& clean, const PlaneSymmetry& plane) {
    KdTree tree(clean);
    return normalized_chamfer(clean, tree, reflect_points(clean, plane));
}

double validate_symmetry(const PointCloud& clean, const AxisSymmetry& axis, Rng& rng) {
    KdTree tree(clean);
    if (!axis.continuous())
        return normalized_chamfer(clean, tree, rotate_about_axis(clean, axis, axis.period));
    double worst = 0.0;
    for (int i = 0; i < 8; ++i) {
        double angle = rng.uniform(0.0, kTwoPi);
        worst = std::max(worst,
                         normalized_chamfer(clean, tree, rotate_about_axis(clean, axis, angle)));
    }
    return worst;
}

std::vector<double> validate_symmetry_set(const PointCloud& clean, const SymmetrySet& s,
                                          Rng& rng) {
    std::vector<double> residuals;
    residuals.reserve(s.size());
    KdTree tree(clean);
    for (const PlaneSymmetry& p : s.planes)
        residuals.push_back(normalized_chamfer(clean, tree, reflect_points(clean, p)));
    for (const AxisSymmetry& a : s.axes) {
        if (!a.continuous()) {
            residuals.push_back(
                normalized_chamfer(clean, tree, rotate_about_axis(clean, a, a.period)));
        } else {
            double worst = 0.0;
            for (int i = 0; i < 8; ++i)
                worst = std::max(
                    worst, normalized_chamfer(clean, tree,
                                              rotate_about_axis(clean, a, rng.uniform(0.0, kTwoPi))));
            residuals.push_back(worst);
        }
    }
    return residuals;
}

std::string write_gt(const SymmetrySet& s) {
    std::string out;
    out.append(std::to_string(s.size()));
    out.push_back('\n');
    for (const PlaneSymmetry& p : s.planes) {
        out.append("plane");
        for (double v : {p.normal.x, p.normal.y, p.normal.z, p.point.x, p.point.y, p.point.z}) {
            out.push_back(' ');
            detail::format_double(out, v);
        }
        out.push_back('\n');
    }
    for (const AxisSymmetry& a : s.axes) {
        out.append("axis");
        for (double v :
             {a.direction.x, a.direction.y, a.direction.z, a.point.x, a.point.y, a.point.z}) {
            out.push_back(' ');
            detail::format_double(out, v);
        }
        out.push_back(' ');
        if (a.continuous())
            out.append("inf");
        else
            detail::format_double(out, a.period);
        out.push_back('\n');
    }
    return out;
}

SymmetrySet parse_gt(const std::string& text) {
    using Scanner = detail::LineScanner<GtParseError>;
    SymmetrySet out;
    long declared = -1;
    int last_line = 0;
    detail::for_each_line(text, [&](int line_no, const char* begin, const char* end) {
        last_line = line_no;
        Scanner sc{begin, end, line_no};
        if (line_no == 1) {
            std::string_view tok = sc.token();
            auto res = std::from_chars(tok.data(), tok.data() + tok.size(), declared);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || declared < 0)
                throw GtParseError(1, "expected symmetry count, got '" + std::string(tok) + "'");
            sc.expect_eol("count");
            return;
        }
        std::string_view kind = sc.token();
        if (kind == "plane") {
            Vec3 n{sc.number("nx"), sc.number("ny"), sc.number("nz")};
            Vec3 c{sc.number("px"), sc.number("py"), sc.number("pz")};
            double n_len = n.norm();
            if (std::abs(n_len - 1.0) > 1e-3)
                throw GtParseError(line_no, "plane normal is not unit length");
            sc.expect_eol("plane line");
            // keep exact round-trips bit-identical; renormalize only sloppy input
            if (std::abs(n_len - 1.0) > 1e-9) n = n.normalized();
            out.planes.push_back({n, c});
        } else if (kind == "axis") {
            Vec3 d{sc.number("dx"), sc.number("dy"), sc.number("dz")};
            Vec3 c{sc.number("px"), sc.number("py"), sc.number("pz")};
            double period = sc.number("period");
            double d_len = d.norm();
            if (std::abs(d_len - 1.0) > 1e-3)
                throw GtParseError(line_no, "axis direction is not unit length");
            if (!(period > 0.0)) throw GtParseError(line_no, "axis period must be positive");
            sc.expect_eol("axis line");
            if (std::abs(d_len - 1.0) > 1e-9) d = d.normalized();
            out.axes.push_back({d, c, period});
        } else {
            throw GtParseError(line_no,
                               "expected 'plane' or 'axis', got '" + std::string(kind) + "'");
        }
    });
    if (declared < 0) throw GtParseError(1, "empty ground-truth file");
    if (static_cast<size_t>(declared) != out.size())
        throw GtParseError(last_line, "count mismatch: header says " + std::to_string(declared) +
                                          ", found " + std::to_string(out.size()));
    return out;
}

}  // namespace symgen
