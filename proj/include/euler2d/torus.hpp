#pragma once

#include <cmath>
#include <cstdint>

namespace euler2d {

/// Plain 2-vector used for positions, velocities and kernel values.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
    Vec2 operator-() const { return {-x, -y}; }

    double norm2() const { return x * x + y * y; }
    double norm() const { return std::sqrt(norm2()); }
    /// 90-degree counterclockwise rotation (-y, x).
    Vec2 perp() const { return {-y, x}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

/// 2x2 matrix, row major.
struct Mat2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    static Mat2 identity() { return {}; }
    double det() const { return a11 * a22 - a12 * a21; }
    Mat2 inverse() const {
        const double d = det();
        return {a22 / d, -a12 / d, -a21 / d, a11 / d};
    }
    Vec2 apply(const Vec2& v) const { return {a11 * v.x + a12 * v.y, a21 * v.x + a22 * v.y}; }
    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 mul(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
};

/// Wraps a scalar coordinate into the canonical interval [-1/2, 1/2).
double wrap_coord(double a);

/// Canonical representative of a point on the unit torus [-1/2, 1/2)^2.
Vec2 wrap(const Vec2& p);

/// Shortest displacement from q to p on the torus (each component in [-1/2, 1/2)).
Vec2 torus_diff(const Vec2& p, const Vec2& q);

/// Geodesic distance on the unit torus; at most sqrt(2)/2.
double torus_distance(const Vec2& p, const Vec2& q);

}  // namespace euler2d
