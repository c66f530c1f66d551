#pragma once

#include <cmath>
#include <utility>
#include <vector>

#include "trigshear/analysis.hpp"
#include "trigshear/cartoon.hpp"
#include "trigshear/shearlet.hpp"

namespace trigshear::testsupport {

// Psi_{j,l}(2^j rho Theta(theta))
inline double polar_window(const ShearletSystem& system, Cone cone, int j, int l, double rho,
                           double theta) {
    double scale = std::pow(2.0, j);
    return system.window_scaled_eval(cone, j, l,
                                     {scale * rho * std::cos(theta), scale * rho * std::sin(theta)});
}

template <class F>
double fd_derivative(F&& f, double x, int r, double h) {
    if (r == 1)
        return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12 * h);
    if (r == 2)
        return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
               (12 * h * h);
    // nested first differences for higher orders
    auto lower = [&](double t) { return fd_derivative(f, t, r - 1, h); };
    return (-lower(x + 2 * h) + 8 * lower(x + h) - 8 * lower(x - h) + lower(x - 2 * h)) /
           (12 * h);
}

// max over a (rho, theta) sample grid of |d^r/d rho^r| or |d^r/d theta^r| of
// the polar window; finite differences with the documented steps
inline double polar_derivative_max(const ShearletSystem& system, Cone cone, int j, int l, int r,
                                   bool theta_direction, int samples = 33) {
    double lo, hi;
    {
        double a = orientation_angle(cone, j, l - 2), b = orientation_angle(cone, j, l + 2);
        lo = std::min(a, b);
        hi = std::max(a, b);
    }
    double h_rho = 1e-4;
    double h_theta = 1e-4 * std::pow(2.0, -j / 2);
    double worst = 0.0;
    for (int ir = 0; ir <= samples; ++ir) {
        double rho = 0.35 + (1.95 - 0.35) * double(ir) / samples;
        for (int it = 0; it <= samples; ++it) {
            double theta = lo + (hi - lo) * double(it) / samples;
            double d;
            if (theta_direction) {
                auto f = [&](double t) { return polar_window(system, cone, j, l, rho, t); };
                d = fd_derivative(f, theta, r, h_theta);
            } else {
                auto f = [&](double t) { return polar_window(system, cone, j, l, t, theta); };
                d = fd_derivative(f, rho, r, h_rho);
            }
            worst = std::max(worst, std::fabs(d));
        }
    }
    return worst;
}

inline StarSet circle_star(double radius = 2.0, Vec2 center = {0.0, 0.0}) {
    RadiusSeries rs;
    rs.constant = radius;
    return StarSet(center, rs);
}

inline StarSet three_lobe_star(double base = 1.6, double wobble = 0.35) {
    RadiusSeries rs;
    rs.constant = base;
    rs.cosine = {0.0, 0.0, wobble}; // r(t) = base + wobble cos(3t)
    return StarSet({0.0, 0.0}, rs);
}

} // namespace trigshear::testsupport
