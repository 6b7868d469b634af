// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#include "symgen/curves.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace symgen {

const char* family_name(CurveFamily f) {
    switch (f) {
        case CurveFamily::Citrus: return "citrus";
        case CurveFamily::MConvexities: return "m-convexities";
        case CurveFamily::Lemniscate: return "lemniscate";
        case CurveFamily::EggKeplero: return "egg-keplero";
        case CurveFamily::Mouth: return "mouth";
        case CurveFamily::GeometricPetal: return "geometric-petal";
        case CurveFamily::Astroid: return "astroid";
        case CurveFamily::Ellipse: return "ellipse";
        case CurveFamily::Square: return "square";
        case CurveFamily::Bezier: return "bezier";
    }
    return "unknown";
}

CurveDomain curve_domain(const CurveSpec& spec) {
    switch (spec.family) {
        case CurveFamily::Citrus: return {0.0, spec.params.a};
        case CurveFamily::EggKeplero: return {-10.0, 10.0};
        case CurveFamily::Bezier: return {0.0, 1.0};
        default: return {0.0, kTwoPi};
    }
}

namespace {

// Slight slack so regular sampling endpoints survive round-off.
constexpr double kDomainSlack = 1e-12;

void check_domain(const CurveSpec& spec, double t) {
    CurveDomain d = curve_domain(spec);
    if (!(t >= d.lo - kDomainSlack && t <= d.hi + kDomainSlack))
        throw std::domain_error("curve parameter t=" + std::to_string(t) +
                                " outside domain [" + std::to_string(d.lo) + ", " +
                                std::to_string(d.hi) + "]");
}

Vec2 eval_citrus(const CurveParams& p, double t, Branch branch) {
    const double a = p.a, b = p.b;
    double radicand = (a - t) * (a - t) * (a - t) * t * t * t;
    if (radicand < 0.0) {
        // t inside [0, a] makes both factors non-negative; only round-off at
        // the endpoints can land here.
        assert(radicand > -1e-30);
        radicand = 0.0;
    }
    double y = std::sqrt(radicand) / (a * a * b);
    return {t - a / 2.0, branch == Branch::Positive ? y : -y};
}

Vec2 eval_bezier(const CurveParams& p, double t) {
    const double u = 1.0 - t;
    const double w0 = u * u * u;
    const double w1 = 3.0 * u * u * t;
    const double w2 = 3.0 * u * t * t;
    const double w3 = t * t * t;
    const auto& c = p.control_points;
    return {w0 * c[0].x + w1 * c[1].x + w2 * c[2].x + w3 * c[3].x,
            w0 * c[0].y + w1 * c[1].y + w2 * c[2].y + w3 * c[3].y};
}

}  // namespace

Vec2 eval_curve(const CurveSpec& spec, double t, Branch branch) {
    check_domain(spec, t);
    const CurveParams& p = spec.params;
    const double a = p.a, b = p.b;
    switch (spec.family) {
        case CurveFamily::Citrus: return eval_citrus(p, t, branch);
        case CurveFamily::MConvexities: {
            double r = a / (1.0 + b * std::cos(p.m * t));
            return {r * std::cos(t), r * std::sin(t)};
        }
        case CurveFamily::Lemniscate: {
            double s = std::sin(t), c = std::cos(t);
            double d = 1.0 + c * c;
            return {a * s / d, a * s * c / d};
        }
        case CurveFamily::EggKeplero: {
            double d = (1.0 + t * t) * (1.0 + t * t);
            return {a / d, a * t / d};
        }
        case CurveFamily::Mouth: {
            double s = std::sin(t);
            return {a * std::cos(t), a * s * s * s};
        }
        case CurveFamily::GeometricPetal: {
            double r = a + b * std::cos(p.m * t);
            return {r * std::cos(t), r * std::sin(t)};
        }
        case CurveFamily::Astroid: {
            double s = std::sin(t), c = std::cos(t);
            return {a * c * c * c, a * s * s * s};
        }
        case CurveFamily::Ellipse: return {a * std::cos(t), b * std::sin(t)};
        case CurveFamily::Square: {
            double s = std::sin(t), c = std::cos(t);
            double d = std::max(std::abs(c), std::abs(s));
            return {a * c / d, b * s / d};
        }
        case CurveFamily::Bezier: return eval_bezier(p, t);
    }
    throw std::logic_error("unreachable curve family");
}

std::vector<Vec2> sample_curve(const CurveSpec& spec, int count, Rng& rng) {
    if (count < 1) throw std::invalid_argument("sample_curve: count must be >= 1");
    CurveDomain d = curve_domain(spec);
    const bool two_branch = spec.family == CurveFamily::Citrus;
    std::vector<Vec2> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double t = rng.uniform(d.lo, d.hi);
        Branch br = Branch::Positive;
        if (two_branch) br = rng.bernoulli(0.5) ? Branch::Positive : Branch::Negative;
        out.push_back(eval_curve(spec, t, br));
    }
    return out;
}

std::vector<Vec2> sample_curve_regular(const CurveSpec& spec, int count) {
    if (count < 1) throw std::invalid_argument("sample_curve_regular: count must be >= 1");
    CurveDomain d = curve_domain(spec);
    std::vector<Vec2> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        double t = d.lo + d.length() * i / count;
        Branch br = (spec.family == CurveFamily::Citrus && (i & 1)) ? Branch::Negative
                                                                    : Branch::Positive;
        out.push_back(eval_curve(spec, t, br));
    }
    return out;
}

namespace {

std::vector<double> mirror_lines(int m) {
    std::vector<double> lines;
    lines.reserve(m);
    for (int k = 0; k < m; ++k) lines.push_back(kPi * k / m);
    return lines;
}

constexpr double kEqualTol = 1e-12;

}  // namespace

Symmetry2D curve_symmetries_2d(const CurveSpec& spec) {
    const CurveParams& p = spec.params;
    Symmetry2D s;
    switch (spec.family) {
        case CurveFamily::Citrus:
        case CurveFamily::Lemniscate:
        case CurveFamily::Mouth:
            s.reflection_line_angles = {0.0, kPi / 2.0};
            s.rotation = Rotation2D::discrete(kPi);
            break;
        case CurveFamily::EggKeplero:
            s.reflection_line_angles = {0.0};
            s.rotation = Rotation2D::none();
            break;
        case CurveFamily::MConvexities:
        case CurveFamily::GeometricPetal:
            s.reflection_line_angles = mirror_lines(p.m);
            // m = 1 leaves only the trivial full turn, which is no symmetry.
            s.rotation = p.m >= 2 ? Rotation2D::discrete(kTwoPi / p.m) : Rotation2D::none();
            break;
        case CurveFamily::Astroid:
            s.reflection_line_angles = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
            s.rotation = Rotation2D::discrete(kPi / 2.0);
            break;
        case CurveFamily::Ellipse:
            s.reflection_line_angles = {0.0, kPi / 2.0};
            s.rotation = std::abs(p.a - p.b) < kEqualTol ? Rotation2D::continuous()
                                                         : Rotation2D::discrete(kPi);
            break;
        case CurveFamily::Square:
            if (std::abs(p.a - p.b) < kEqualTol) {
                s.reflection_line_angles = {0.0, kPi / 4.0, kPi / 2.0, 3.0 * kPi / 4.0};
                s.rotation = Rotation2D::discrete(kPi / 2.0);
            } else {
                s.reflection_line_angles = {0.0, kPi / 2.0};
                s.rotation = Rotation2D::discrete(kPi);
            }
            break;
        case CurveFamily::Bezier:
            break;  // no 2D symmetry; the revolution step adds the 3D axis
    }
    return s;
}

CurveParams sample_params(CurveFamily family, Rng& rng) {
    CurveParams p;
    switch (family) {
        case CurveFamily::Citrus:
            p.a = 1.0;
            p.b = static_cast<double>(rng.uniform_int(1, 13));
            break;
        case CurveFamily::MConvexities:
            p.a = rng.uniform(0.5, 1.1);
            p.b = rng.uniform(0.2, 0.9);
            p.m = static_cast<int>(rng.uniform_int(3, 9));
            break;
        case CurveFamily::GeometricPetal:
            p.a = rng.uniform(1.0, 2.0);
            p.b = static_cast<double>(rng.uniform_int(1, 6));
            p.m = static_cast<int>(rng.uniform_int(1, 6));
            break;
        case CurveFamily::Lemniscate:
        case CurveFamily::EggKeplero:
        case CurveFamily::Mouth:
        case CurveFamily::Astroid:
            p.a = 1.0;
            break;
        case CurveFamily::Ellipse:
        case CurveFamily::Square:
            p.a = 1.0;
            p.b = rng.uniform(0.5, 1.5);
            break;
        case CurveFamily::Bezier: {
            double x0 = rng.uniform(0.1, 1.0);
            double x1 = rng.uniform(0.1, 1.0);
            double y1 = rng.uniform(0.1, 1.0);
            double x2 = rng.uniform(0.1, 1.0);
            double y2 = rng.uniform(0.0, 1.0);
            p.control_points = {Vec3{x0, 1.0, 0.0}, Vec3{x1, y1, 0.0}, Vec3{x2, y2, 0.0},
                                Vec3{0.0, 0.0, 0.0}};
            break;
        }
    }
    return p;
}

}  // namespace symgen
