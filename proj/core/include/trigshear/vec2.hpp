#pragma once

#include <cmath>

namespace trigshear {

struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double a, double b) : x1(a), x2(b) {}

    constexpr Vec2 operator+(Vec2 o) const { return {x1 + o.x1, x2 + o.x2}; }
    constexpr Vec2 operator-(Vec2 o) const { return {x1 - o.x1, x2 - o.x2}; }
    constexpr Vec2 operator*(double s) const { return {x1 * s, x2 * s}; }
    constexpr Vec2 operator-() const { return {-x1, -x2}; }

    constexpr double dot(Vec2 o) const { return x1 * o.x1 + x2 * o.x2; }
    double norm() const { return std::hypot(x1, x2); }
    constexpr double norm_sq() const { return x1 * x1 + x2 * x2; }

    Vec2 normalized() const {
        double n = norm();
        return {x1 / n, x2 / n};
    }
    // rotate by -90 degrees; maps a counterclockwise tangent to the outward normal
    constexpr Vec2 rotated_cw() const { return {x2, -x1}; }
};

inline constexpr Vec2 operator*(double s, Vec2 v) { return v * s; }

// unit vector at angle theta
inline Vec2 unit_dir(double theta) { return {std::cos(theta), std::sin(theta)}; }

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// wrap an angle into [0, 2*pi)
inline double wrap_angle(double a) {
    a = std::fmod(a, two_pi);
    if (a < 0.0) a += two_pi;
    return a;
}

// signed angular difference a - b wrapped into (-pi, pi]
inline double angle_diff(double a, double b) {
    double d = std::fmod(a - b, two_pi);
    if (d <= -pi) d += two_pi;
    if (d > pi) d -= two_pi;
    return d;
}

} // namespace trigshear
