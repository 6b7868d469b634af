// Copyright (c) 2026 symgen contributors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace symgen {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::sqrt(x * x + y * y); }
};

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    constexpr Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    constexpr double norm_sq() const { return x * x + y * y + z * z; }
    double norm() const { return std::sqrt(norm_sq()); }
    Vec3 normalized() const {
        double n = norm();
        return {x / n, y / n, z / n};
    }
    constexpr bool finite() const {
        return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
    }
};

inline constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// An ordered 3D point cloud in model units.
using PointCloud = std::vector<Vec3>;

/// Row-major 3x3 matrix.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};

    static constexpr Mat3 identity() { return {}; }

    constexpr Vec3 operator*(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    constexpr Mat3 operator*(const Mat3& o) const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                r.m[i][j] = 0.0;
                for (int k = 0; k < 3; ++k) r.m[i][j] += m[i][k] * o.m[k][j];
            }
        return r;
    }

    constexpr Mat3 transpose() const {
        Mat3 r;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) r.m[i][j] = m[j][i];
        return r;
    }

    static Mat3 rotation_x(double angle) {
        double c = std::cos(angle), s = std::sin(angle);
        return {{{{1, 0, 0}, {0, c, -s}, {0, s, c}}}};
    }
    static Mat3 rotation_y(double angle) {
        double c = std::cos(angle), s = std::sin(angle);
        return {{{{c, 0, s}, {0, 1, 0}, {-s, 0, c}}}};
    }
    static Mat3 rotation_z(double angle) {
        double c = std::cos(angle), s = std::sin(angle);
        return {{{{c, -s, 0}, {s, c, 0}, {0, 0, 1}}}};
    }

    /// Rodrigues rotation about a unit axis.
    static Mat3 axis_angle(const Vec3& unit_axis, double angle) {
        const double c = std::cos(angle), s = std::sin(angle), t = 1.0 - c;
        const double x = unit_axis.x, y = unit_axis.y, z = unit_axis.z;
        return {{{{t * x * x + c, t * x * y - s * z, t * x * z + s * y},
                  {t * x * y + s * z, t * y * y + c, t * y * z - s * x},
                  {t * x * z - s * y, t * y * z + s * x, t * z * z + c}}}};
    }

    /// Max deviation of R^T R from the identity.
    double orthonormality_error() const {
        Mat3 g = transpose() * (*this);
        double e = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                e = std::max(e, std::abs(g.m[i][j] - (i == j ? 1.0 : 0.0)));
        return e;
    }

    double determinant() const {
        return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
               m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
               m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    }
};

/// Proper rigid motion: p -> R p + t.
struct RigidTransform {
    Mat3 rotation;
    Vec3 translation;

    Vec3 apply(const Vec3& p) const { return rotation * p + translation; }

    PointCloud apply(const PointCloud& cloud) const {
        PointCloud out;
        out.reserve(cloud.size());
        for (const Vec3& p : cloud) out.push_back(apply(p));
        return out;
    }

    bool is_identity() const {
        return rotation.orthonormality_error() == 0.0 && translation.norm_sq() == 0.0 &&
               rotation.m[0][0] == 1.0 && rotation.m[1][1] == 1.0 && rotation.m[2][2] == 1.0;
    }
};

struct Bbox {
    Vec3 lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
            std::numeric_limits<double>::infinity()};
    Vec3 hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
            -std::numeric_limits<double>::infinity()};

    void expand(const Vec3& p) {
        lo.x = std::min(lo.x, p.x);
        lo.y = std::min(lo.y, p.y);
        lo.z = std::min(lo.z, p.z);
        hi.x = std::max(hi.x, p.x);
        hi.y = std::max(hi.y, p.y);
        hi.z = std::max(hi.z, p.z);
    }
    double diagonal() const { return (hi - lo).norm(); }
};

inline Bbox bounding_box(const PointCloud& cloud) {
    Bbox b;
    for (const Vec3& p : cloud) b.expand(p);
    return b;
}

inline Vec3 centroid(const PointCloud& cloud) {
    Vec3 c;
    for (const Vec3& p : cloud) c += p;
    return c * (1.0 / static_cast<double>(cloud.size()));
}

/// Diameter of the circumscribed sphere around the centroid. Plays the role
/// of the bbox diagonal as a scale normalizer but is invariant under rigid
/// motion.
inline double bounding_diameter(const PointCloud& cloud) {
    Vec3 c = centroid(cloud);
    double r_sq = 0.0;
    for (const Vec3& p : cloud) r_sq = std::max(r_sq, (p - c).norm_sq());
    return 2.0 * std::sqrt(r_sq);
}

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }

}  // namespace symgen
