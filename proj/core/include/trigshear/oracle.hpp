#pragma once

#include <complex>
#include <vector>

#include "trigshear/cartoon.hpp"
#include "trigshear/vec2.hpp"

namespace trigshear {

// Bivariate polynomial with an exact derivative closure.
class PolynomialField {
  public:
    PolynomialField() = default;
    // coeffs[i2 * (deg+1) + i1] multiplies x1^i1 x2^i2
    PolynomialField(int degree, std::vector<double> coeffs);

    static PolynomialField constant(double c);
    static PolynomialField monomial(int i1, int i2, double c = 1.0);

    int degree() const { return degree_; }
    double coeff(int i1, int i2) const;
    double eval(Vec2 x) const;

    PolynomialField partial(int axis) const; // d/dx1 or d/dx2
    PolynomialField multiply(const PolynomialField& o) const;
    PolynomialField add(const PolynomialField& o, double scale = 1.0) const;

    // exact m-th directional derivative, sum_{|r|=m} binom(m,r) v^r d^r p
    double directional_derivative(Vec2 v, int m, Vec2 x) const;
    // (v . grad)^m applied m times, as a field
    PolynomialField directional_field(Vec2 v, int m) const;

  private:
    int degree_ = 0;
    std::vector<double> coeffs_; // (degree+1)^2 dense table
};

struct QuadratureResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    bool converged = true;
};

// (2 pi)^{-2} int_T p(x) e^{-i xi.x} dx by polar quadrature around the star
// origin: the radial integral is closed-form (polynomial times complex
// exponential), the angular one uses composite Gauss panels doubled until the
// target absolute error is met.
QuadratureResult ft_region_quadrature(const PolynomialField& p, const StarSet& region, Vec2 xi,
                                      double target = 1e-10);

// Same transform through the boundary-integral representation
//   sum_m C_m rho^{-(m+1)} int_{dT} d^m_Theta[p] e^{-i rho Theta.x} Theta.n dsigma
// with C_m = (2 pi)^{-2} i (-i)^m. Requires rho > 0.
QuadratureResult ft_region_boundary(const PolynomialField& p, const StarSet& region,
                                    double rho, double theta, double target = 1e-10);

// Compactly supported smooth field p chi_T used by the Fourier
// differentiation identity check.
struct SmoothBumpField {
    PolynomialField p;
    StarSet region;
};

// (1 - |x - center|^2 / R^2)^s on the disc of radius R: C^{s-1}, polynomial
// inside, zero outside.
SmoothBumpField make_polynomial_bump(int s, double radius, Vec2 center);

// | F[d^m_v f](xi) - i^m (v.xi)^m F[f](xi) |, both sides by quadrature.
double directional_fourier_identity_check(const SmoothBumpField& f, Vec2 v, int m, Vec2 xi,
                                          double target = 1e-10);

// Power-series J_1, accurate for |z| <= 12; independent reference for the
// disc indicator transform.
double bessel_j1_series(double z);

// Closed form (2 pi)^{-2} e^{-i xi.c} 2 pi R J_1(R|xi|)/|xi| for the disc.
std::complex<double> disc_indicator_transform(double radius, Vec2 center, Vec2 xi);

} // namespace trigshear
