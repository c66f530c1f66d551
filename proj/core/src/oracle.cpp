#include "trigshear/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trigshear {

namespace {

constexpr std::complex<double> kImag{0.0, 1.0};

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// 16-point Gauss-Legendre rule on [-1, 1]
constexpr int kGaussN = 8;
constexpr double kGaussX[kGaussN] = {
    0.09501250983763744, 0.28160355077925891, 0.45801677765722737, 0.61787624440264375,
    0.75540440835500303, 0.86563120238783174, 0.94457502307323258, 0.98940093499164993};
constexpr double kGaussW[kGaussN] = {
    0.18945061045506850, 0.18260341504492359, 0.16915651939500254, 0.14959598881657673,
    0.12462897125553387, 0.09515851168249278, 0.06225352393864789, 0.02715245941175409};

template <class F>
std::complex<double> gauss_panels(F&& fn, double a, double b, int panels) {
    std::complex<double> acc(0.0, 0.0);
    double h = (b - a) / double(panels);
    for (int p = 0; p < panels; ++p) {
        double mid = a + (double(p) + 0.5) * h;
        for (int g = 0; g < kGaussN; ++g) {
            acc += kGaussW[g] * fn(mid + 0.5 * h * kGaussX[g]);
            acc += kGaussW[g] * fn(mid - 0.5 * h * kGaussX[g]);
        }
    }
    return acc * (0.5 * h);
}

// int_0^R s^m e^{-i a s} ds: Taylor series for small |aR|, upward
// integration-by-parts recursion otherwise
std::complex<double> radial_moment(int m, double a, double R) {
    double aR = std::fabs(a) * R;
    if (aR <= 8.0) {
        std::complex<double> term = 1.0, acc = 0.0;
        for (int t = 0; t < 64; ++t) {
            acc += term * (std::pow(R, m + t + 1) / double(m + t + 1));
            term *= -kImag * a / double(t + 1);
            if (std::abs(term) * std::pow(R, m + t + 2) < 1e-18) break;
        }
        return acc;
    }
    std::complex<double> e = std::exp(-kImag * a * R);
    std::complex<double> ia = kImag * a;
    std::complex<double> prev = (1.0 - e) / ia;
    double rm = 1.0;
    for (int k = 1; k <= m; ++k) {
        rm *= R;
        prev = (-rm * e + double(k) * prev) / ia;
    }
    return prev;
}

template <class F>
QuadratureResult adaptive_angular(F&& fn, double target, int panels0) {
    QuadratureResult res;
    int panels = std::max(4, panels0);
    std::complex<double> prev = gauss_panels(fn, 0.0, two_pi, panels);
    for (int round = 0; round < 6; ++round) {
        panels *= 2;
        std::complex<double> cur = gauss_panels(fn, 0.0, two_pi, panels);
        res.error_estimate = std::abs(cur - prev);
        res.value = cur;
        if (res.error_estimate <= target) return res;
        prev = cur;
    }
    res.converged = false;
    return res;
}

} // namespace

PolynomialField::PolynomialField(int degree, std::vector<double> coeffs)
    : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree_ < 0) throw std::invalid_argument("degree must be >= 0");
    coeffs_.resize(std::size_t(degree_ + 1) * (degree_ + 1), 0.0);
}

PolynomialField PolynomialField::constant(double c) { return PolynomialField(0, {c}); }

PolynomialField PolynomialField::monomial(int i1, int i2, double c) {
    int deg = std::max(i1, i2);
    PolynomialField p(deg, {});
    p.coeffs_[std::size_t(i2) * (deg + 1) + i1] = c;
    return p;
}

double PolynomialField::coeff(int i1, int i2) const {
    if (i1 < 0 || i2 < 0 || i1 > degree_ || i2 > degree_) return 0.0;
    return coeffs_[std::size_t(i2) * (degree_ + 1) + i1];
}

double PolynomialField::eval(Vec2 x) const {
    // Horner in x2, then x1
    double acc = 0.0;
    for (int i2 = degree_; i2 >= 0; --i2) {
        double row = 0.0;
        for (int i1 = degree_; i1 >= 0; --i1) row = row * x.x1 + coeff(i1, i2);
        acc = acc * x.x2 + row;
    }
    return acc;
}

PolynomialField PolynomialField::partial(int axis) const {
    if (degree_ == 0) return constant(0.0);
    // only the differentiated axis loses a power; keep the square table
    PolynomialField out(degree_, {});
    for (int i2 = 0; i2 <= degree_; ++i2)
        for (int i1 = 0; i1 <= degree_; ++i1) {
            double c = axis == 0 ? coeff(i1 + 1, i2) * double(i1 + 1)
                                 : coeff(i1, i2 + 1) * double(i2 + 1);
            out.coeffs_[std::size_t(i2) * (degree_ + 1) + i1] = c;
        }
    return out;
}

PolynomialField PolynomialField::multiply(const PolynomialField& o) const {
    int deg = degree_ + o.degree_;
    PolynomialField out(deg, {});
    for (int a2 = 0; a2 <= degree_; ++a2)
        for (int a1 = 0; a1 <= degree_; ++a1) {
            double ca = coeff(a1, a2);
            if (ca == 0.0) continue;
            for (int b2 = 0; b2 <= o.degree_; ++b2)
                for (int b1 = 0; b1 <= o.degree_; ++b1)
                    out.coeffs_[std::size_t(a2 + b2) * (deg + 1) + a1 + b1] +=
                        ca * o.coeff(b1, b2);
        }
    return out;
}

PolynomialField PolynomialField::add(const PolynomialField& o, double scale) const {
    int deg = std::max(degree_, o.degree_);
    PolynomialField out(deg, {});
    for (int i2 = 0; i2 <= deg; ++i2)
        for (int i1 = 0; i1 <= deg; ++i1)
            out.coeffs_[std::size_t(i2) * (deg + 1) + i1] =
                coeff(i1, i2) + scale * o.coeff(i1, i2);
    return out;
}

double PolynomialField::directional_derivative(Vec2 v, int m, Vec2 x) const {
    if (m < 0) throw std::invalid_argument("order must be >= 0");
    if (m == 0) return eval(x);
    // sum_{r1+r2=m} binom(m, r) v^r d^r p(x)
    double acc = 0.0;
    for (int r1 = 0; r1 <= m; ++r1) {
        int r2 = m - r1;
        PolynomialField d = *this;
        for (int i = 0; i < r1; ++i) d = d.partial(0);
        for (int i = 0; i < r2; ++i) d = d.partial(1);
        acc += binomial(m, r1) * std::pow(v.x1, r1) * std::pow(v.x2, r2) * d.eval(x);
    }
    return acc;
}

PolynomialField PolynomialField::directional_field(Vec2 v, int m) const {
    PolynomialField out = *this;
    for (int i = 0; i < m; ++i)
        out = out.partial(0).multiply(constant(v.x1)).add(out.partial(1).multiply(constant(v.x2)));
    return out;
}

QuadratureResult ft_region_quadrature(const PolynomialField& p, const StarSet& region, Vec2 xi,
                                      double target) {
    int deg = p.degree();
    Vec2 x0 = region.origin();
    std::complex<double> origin_phase =
        std::exp(-kImag * (xi.x1 * x0.x1 + xi.x2 * x0.x2));

    auto integrand = [&](double t) {
        Vec2 dir = unit_dir(t);
        double R = region.radius().eval(t);
        double a = xi.dot(dir);
        // p(x0 + s dir) = sum_d c_d s^d with c_d = d^d_dir p(x0) / d!
        std::complex<double> acc(0.0, 0.0);
        double fact = 1.0;
        for (int d = 0; d <= deg; ++d) {
            if (d > 0) fact *= double(d);
            double c = p.directional_derivative(dir, d, x0) / fact;
            if (c != 0.0) acc += c * radial_moment(d + 1, a, R);
        }
        return acc;
    };

    double osc = xi.norm() * (region.max_radius() + region.tau());
    int panels0 = std::max(8, int(std::ceil(osc * 10.0 / (16.0 * two_pi))));
    QuadratureResult res = adaptive_angular(integrand, target, panels0);
    res.value *= origin_phase / (two_pi * two_pi);
    return res;
}

QuadratureResult ft_region_boundary(const PolynomialField& p, const StarSet& region,
                                    double rho, double theta, double target) {
    if (rho <= 0.0) throw std::invalid_argument("boundary transform needs rho > 0");
    int deg = p.degree();
    Vec2 dir = unit_dir(theta);

    // d^m_Theta p as exact polynomial fields, fixed direction
    std::vector<PolynomialField> dpm;
    dpm.reserve(deg + 1);
    dpm.push_back(p);
    for (int m = 1; m <= deg; ++m) dpm.push_back(dpm.back().directional_field(dir, 1));

    // C_m = (2 pi)^{-2} i (-i)^m from the divergence-theorem recursion
    std::vector<std::complex<double>> cm(deg + 1);
    std::complex<double> f = kImag / (two_pi * two_pi);
    for (int m = 0; m <= deg; ++m) {
        cm[m] = f / std::pow(rho, m + 1);
        f *= -kImag;
    }

    auto integrand = [&](double t) {
        double r = region.radius().eval(t), dr = region.radius().d1(t);
        Vec2 gdir = unit_dir(t);
        Vec2 gamma = region.origin() + r * gdir;
        // beta = n |gamma'| = (r cos t + r' sin t, r sin t - r' cos t)
        Vec2 beta(r * gdir.x1 + dr * gdir.x2, r * gdir.x2 - dr * gdir.x1);
        std::complex<double> phase = std::exp(-kImag * rho * dir.dot(gamma));
        double flux = dir.dot(beta);
        std::complex<double> acc(0.0, 0.0);
        for (int m = 0; m <= deg; ++m) acc += cm[m] * dpm[m].eval(gamma);
        return acc * phase * flux;
    };

    double osc = rho * (region.max_radius() + region.tau());
    int panels0 = std::max(8, int(std::ceil(osc * 10.0 / (16.0 * two_pi))));
    return adaptive_angular(integrand, target, panels0);
}

SmoothBumpField make_polynomial_bump(int s, double radius, Vec2 center) {
    if (s < 1) throw std::invalid_argument("bump exponent must be >= 1");
    // 1 - ((x1-c1)^2 + (x2-c2)^2)/R^2
    double inv = 1.0 / (radius * radius);
    PolynomialField base = PolynomialField::constant(1.0 - center.norm_sq() * inv);
    base = base.add(PolynomialField::monomial(1, 0, 2.0 * center.x1 * inv));
    base = base.add(PolynomialField::monomial(0, 1, 2.0 * center.x2 * inv));
    base = base.add(PolynomialField::monomial(2, 0, -inv));
    base = base.add(PolynomialField::monomial(0, 2, -inv));
    PolynomialField pw = PolynomialField::constant(1.0);
    for (int i = 0; i < s; ++i) pw = pw.multiply(base);

    RadiusSeries rs;
    rs.constant = radius;
    return {pw, StarSet(center, rs)};
}

double directional_fourier_identity_check(const SmoothBumpField& f, Vec2 v, int m, Vec2 xi,
                                          double target) {
    if (std::fabs(v.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("direction must be a unit vector");
    std::complex<double> lhs =
        ft_region_quadrature(f.p.directional_field(v, m), f.region, xi, target).value;
    std::complex<double> base = ft_region_quadrature(f.p, f.region, xi, target).value;
    std::complex<double> rhs = std::pow(kImag, m) * std::pow(v.dot(xi), m) * base;
    return std::abs(lhs - rhs);
}

double bessel_j1_series(double z) {
    double half = 0.5 * z;
    double term = half, sum = half;
    for (int n = 1; n < 60; ++n) {
        term *= -half * half / (double(n) * double(n + 1));
        sum += term;
        if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
}

std::complex<double> disc_indicator_transform(double radius, Vec2 center, Vec2 xi) {
    double q = xi.norm();
    std::complex<double> phase = std::exp(-kImag * xi.dot(center));
    if (q == 0.0) return phase * (pi * radius * radius) / (two_pi * two_pi);
    return phase * (two_pi * radius * bessel_j1_series(radius * q) / q) / (two_pi * two_pi);
}

} // namespace trigshear
