#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

#include "support.hpp"
#include "trigshear/oracle.hpp"
#include "trigshear/transform.hpp"

using namespace trigshear;
using trigshear::testsupport::circle_star;
using trigshear::testsupport::three_lobe_star;

TEST_SUITE_BEGIN("oracle");

TEST_CASE("polynomial field evaluation and derivatives") {
    // p = 2 + 3 x1 - x1 x2^2
    PolynomialField p = PolynomialField::constant(2.0)
                            .add(PolynomialField::monomial(1, 0, 3.0))
                            .add(PolynomialField::monomial(1, 2, -1.0));
    CHECK(p.eval({1.0, 2.0}) == doctest::Approx(2.0 + 3.0 - 4.0).epsilon(1e-15));
    CHECK(p.partial(0).eval({1.0, 2.0}) == doctest::Approx(3.0 - 4.0).epsilon(1e-15));
    CHECK(p.partial(1).eval({1.0, 2.0}) == doctest::Approx(-4.0).epsilon(1e-15));

    // multinomial directional derivative against the reference cases
    PolynomialField sq = PolynomialField::monomial(2, 0);
    CHECK(sq.directional_derivative({1, 0}, 2, {0.4, 0.9}) == doctest::Approx(2.0));
    CHECK(sq.directional_derivative({0, 1}, 1, {0.4, 0.9}) == doctest::Approx(0.0));
    PolynomialField xy = PolynomialField::monomial(1, 1);
    double inv = 1.0 / std::sqrt(2.0);
    CHECK(xy.directional_derivative({inv, inv}, 2, {0.1, 0.2}) == doctest::Approx(1.0));
}

TEST_CASE("multinomial equals nested single-direction differentiation") {
    PolynomialField p = PolynomialField::monomial(3, 1, 0.7)
                            .add(PolynomialField::monomial(1, 2, -1.3))
                            .add(PolynomialField::monomial(0, 3, 0.4));
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> coord(-1.5, 1.5), ang(0.0, two_pi);
    for (int trial = 0; trial < 30; ++trial) {
        Vec2 x(coord(rng), coord(rng));
        Vec2 v = unit_dir(ang(rng));
        for (int m = 0; m <= 3; ++m) {
            double multi = p.directional_derivative(v, m, x);
            double nested = p.directional_field(v, m).eval(x);
            CHECK(multi == doctest::Approx(nested).epsilon(1e-12));
        }
    }
}

TEST_CASE("analytic and finite-difference directional derivatives agree") {
    PolynomialField p = PolynomialField::monomial(2, 1, 1.1)
                            .add(PolynomialField::monomial(0, 2, -0.6))
                            .add(PolynomialField::monomial(1, 0, 2.0));
    auto field = [&](Vec2 x) { return p.eval(x); };
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> coord(-1.0, 1.0), ang(0.0, two_pi);
    for (int trial = 0; trial < 20; ++trial) {
        Vec2 x(coord(rng), coord(rng));
        Vec2 v = unit_dir(ang(rng));
        for (int m = 1; m <= 3; ++m) {
            double exact = p.directional_derivative(v, m, x);
            double fd = directional_derivative(field, v, m, x);
            CHECK(fd == doctest::Approx(exact).epsilon(1e-6));
        }
    }
}

TEST_CASE("area integral of the unit polynomial") {
    QuadratureResult r = ft_region_quadrature(PolynomialField::constant(1.0), circle_star(),
                                              {0.0, 0.0});
    CHECK(r.converged);
    CHECK(r.value.real() == doctest::Approx(1.0 / pi).epsilon(1e-12));
    CHECK(std::abs(r.value.imag()) <= 1e-12);
}

TEST_CASE("disc transform matches the Bessel series") {
    // J1 reference values from its power series
    CHECK(bessel_j1_series(2.0) == doctest::Approx(0.57672480775687363).epsilon(1e-14));
    CHECK(bessel_j1_series(6.0) == doctest::Approx(-0.27668385812756507).epsilon(1e-13));

    StarSet star = circle_star();
    PolynomialField one = PolynomialField::constant(1.0);
    for (Vec2 xi : {Vec2(1, 0), Vec2(0, 2), Vec2(3, 0), Vec2(2, 2), Vec2(4, 3)}) {
        QuadratureResult q = ft_region_quadrature(one, star, xi);
        std::complex<double> ref = disc_indicator_transform(2.0, {0, 0}, xi);
        CHECK(std::abs(q.value - ref) <= 1e-9);
    }
    // frozen spot value at |xi| = 3
    QuadratureResult spot = ft_region_quadrature(one, star, {3.0, 0.0});
    CHECK(spot.value.real() == doctest::Approx(-0.029357069129825775).epsilon(1e-9));
}

TEST_CASE("conjugate symmetry of the region transform") {
    PolynomialField p = PolynomialField::constant(1.0).add(PolynomialField::monomial(1, 1, 0.5));
    StarSet star = three_lobe_star();
    for (Vec2 xi : {Vec2(1.5, -2.0), Vec2(0.3, 4.0)}) {
        std::complex<double> a = ft_region_quadrature(p, star, xi).value;
        std::complex<double> b = ft_region_quadrature(p, star, -xi).value;
        CHECK(std::abs(a - std::conj(b)) <= 1e-11);
    }
}

TEST_CASE("boundary transform: constant polynomial keeps only the flux term") {
    // zero-padding the constant to degree 3 adds identically-zero derivative
    // terms, so the value must not move
    StarSet star = circle_star();
    PolynomialField c0 = PolynomialField::constant(0.8);
    PolynomialField c3(3, {0.8});
    for (double rho : {1.0, 4.0, 9.5}) {
        std::complex<double> a = ft_region_boundary(c0, star, rho, 0.4).value;
        std::complex<double> b = ft_region_boundary(c3, star, rho, 0.4).value;
        CHECK(std::abs(a - b) <= 1e-12);
    }
    CHECK_THROWS_AS(ft_region_boundary(c0, star, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("boundary and region quadratures agree across polynomials and stars") {
    std::vector<PolynomialField> polys = {
        PolynomialField::constant(1.0),
        PolynomialField::monomial(1, 0, 1.0).add(PolynomialField::constant(0.4)),
        PolynomialField::monomial(1, 1, 0.8).add(PolynomialField::monomial(0, 2, -0.5)),
        PolynomialField::monomial(3, 0, 0.3)
            .add(PolynomialField::monomial(1, 2, 0.9))
            .add(PolynomialField::constant(-0.2)),
    };
    StarSet stars[] = {circle_star(), three_lobe_star()};
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> rho_d(0.5, 12.0), theta_d(0.0, two_pi);
    for (const StarSet& star : stars)
        for (const PolynomialField& p : polys)
            for (int probe = 0; probe < 4; ++probe) {
                double rho = rho_d(rng), theta = theta_d(rng);
                std::complex<double> via_region =
                    ft_region_quadrature(p, star, rho * unit_dir(theta)).value;
                std::complex<double> via_boundary =
                    ft_region_boundary(p, star, rho, theta).value;
                CHECK(std::abs(via_region - via_boundary) <= 1e-8);
            }
}

TEST_CASE("fourier differentiation identity") {
    SmoothBumpField f = make_polynomial_bump(6, 2.0, {0.2, -0.4});

    // m = 0: both sides are the same transform
    CHECK(directional_fourier_identity_check(f, {1, 0}, 0, {3.0, 1.0}) == 0.0);

    // orthogonal direction: the right side vanishes
    Vec2 v(1.0, 0.0);
    CHECK(directional_fourier_identity_check(f, v, 1, {0.0, 4.0}) <= 1e-8);
    CHECK(directional_fourier_identity_check(f, v, 3, {0.0, 2.5}) <= 1e-8);

    std::mt19937 rng(37);
    std::uniform_real_distribution<double> coord(-10.0, 10.0), ang(0.0, two_pi);
    for (int trial = 0; trial < 10; ++trial) {
        Vec2 xi(coord(rng), coord(rng));
        Vec2 dir = unit_dir(ang(rng));
        CHECK(directional_fourier_identity_check(f, dir, 2, xi) <= 1e-7);
    }
}

TEST_CASE("transform pipeline spot-check against the boundary oracle") {
    CartoonFunction chi(circle_star(), {{0.0, two_pi, 0, 1.0}}, SmoothBackground::zero(), 0.1,
                        CartoonFunction::BumpMode::One);
    SpectrumGrid spec = fourier_coefficients(chi.sample(1024));
    PolynomialField one = PolynomialField::constant(1.0);
    StarSet star = circle_star();
    double worst = 0.0, scale = 0.0;
    for (Vec2 k : {Vec2(1, 0), Vec2(2, 1), Vec2(0, 3), Vec2(4, 4)}) {
        double rho = k.norm(), theta = std::atan2(k.x2, k.x1);
        std::complex<double> oracle = ft_region_boundary(one, star, rho, theta).value;
        std::complex<double> ours = spec.at(std::int64_t(k.x1), std::int64_t(k.x2));
        worst = std::max(worst, std::abs(ours - oracle));
        scale = std::max(scale, std::abs(oracle));
    }
    // documented trapezoidal aliasing floor at N = 1024
    CHECK(worst <= 2e-3 * scale);
}

TEST_SUITE_END();
