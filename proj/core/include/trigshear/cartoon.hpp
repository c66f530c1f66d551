#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "trigshear/admissible.hpp"
#include "trigshear/grid.hpp"
#include "trigshear/vec2.hpp"

namespace trigshear {

// 2*pi-periodic radius function r(t) = c0 + sum a_m cos(mt) + sum b_m sin(mt).
struct RadiusSeries {
    double constant = 1.0;
    std::vector<double> cosine;
    std::vector<double> sine;

    double eval(double t) const;
    double d1(double t) const;
    double d2(double t) const;
    // sup over t of max(|r|, |r'|, |r''|), estimated on a dense grid
    double c2_bound() const;
};

struct BoundaryPoint {
    double t = 0.0;          // curve parameter
    Vec2 position;           // gamma(t)
    Vec2 normal;             // unit outward normal
    double normal_angle = 0; // in [0, 2*pi)
    double weight = 0.0;     // |gamma'(t)|
};

// Star-shaped region: boundary gamma(t) = x0 + r(t) (cos t, sin t), region
// strictly inside (-pi, pi)^2, r > 0.
class StarSet {
  public:
    StarSet(Vec2 origin, RadiusSeries radius);

    Vec2 origin() const { return origin_; }
    const RadiusSeries& radius() const { return radius_; }
    double tau() const { return tau_; }

    BoundaryPoint boundary_point(double t) const;
    bool contains(Vec2 x) const;
    // r(angle(x - x0)) - |x - x0|: positive inside, zero on the boundary.
    // Returns a fixed positive cap at x == x0 where the angle is undefined.
    double signed_radial_defect(Vec2 x) const;

    double min_radius() const { return min_radius_; }
    double max_radius() const { return max_radius_; }
    // distance from the region's bounding box to the torus cell boundary
    double box_margin() const { return box_margin_; }

    static constexpr double origin_defect_cap = 1.0;

  private:
    Vec2 origin_;
    RadiusSeries radius_;
    double tau_, min_radius_, max_radius_, box_margin_;
};

// Dense parameter sampling of the boundary with a spatial bucket grid for
// neighborhood queries; shared by orientation sets, census and distance
// evaluation.
class BoundarySampling {
  public:
    explicit BoundarySampling(const StarSet& star, int samples = 1 << 14);

    const StarSet& star() const { return star_; }
    int size() const { return int(points_.size()); }
    const BoundaryPoint& point(int i) const { return points_[i]; }
    double arc_length() const { return arc_length_; }

    // indices of samples within `radius` of p
    std::vector<int> near(Vec2 p, double radius) const;
    // distance to the boundary, Newton-polished from the closest sample
    double distance(Vec2 p) const;
    // closest boundary point, Newton-polished
    BoundaryPoint closest(Vec2 p) const;

    // Newton refinement of a local minimum of |gamma(t) - p| starting at t0
    double refine_parameter(Vec2 p, double t0) const;

  private:
    const StarSet& star_;
    std::vector<BoundaryPoint> points_;
    double arc_length_ = 0.0;
    // bucket grid over [-pi, pi]^2
    int cells_ = 0;
    double cell_size_ = 0.0;
    std::vector<std::vector<int>> buckets_;
    int bucket_index(Vec2 p) const;
};

// One boundary arc [from, to) with a prescribed directional jump order and
// amplitude for the interior factor f1.
struct ArcSpec {
    double from = 0.0;
    double to = two_pi;
    int order = 0;
    double amplitude = 1.0;
};

// Smooth background f0: zero or a radial compactly supported bump.
struct SmoothBackground {
    enum class Kind { Zero, Bump };
    Kind kind = Kind::Zero;
    double amplitude = 0.0;
    Vec2 center;
    double radius = 1.0;

    double eval(Vec2 x, const AdmissibleProfile& profile) const;
    static SmoothBackground zero() { return {}; }
    static SmoothBackground bump(double a, Vec2 c, double r) {
        return {Kind::Bump, a, c, r};
    }
};

// f = f0 + f1 chi_T where f1 = sum_s w_s(angle) a_s d(x)^{n_s} bump(x):
// w_s is a smooth angular partition of unity subordinate to the arcs, d the
// signed radial defect and bump a cutoff supported in a tube around the
// boundary (optionally identically 1 for the plain characteristic function).
class CartoonFunction {
  public:
    enum class BumpMode { Tube, One };

    CartoonFunction(StarSet star, std::vector<ArcSpec> arcs, SmoothBackground f0,
                    double blend = 0.1, BumpMode bump = BumpMode::Tube,
                    StepSpec smoothness = StepSpec::exponential());

    double eval(Vec2 x) const;   // f0 + f1 chi_T
    double f0_eval(Vec2 x) const;
    double f1_eval(Vec2 x) const; // the smooth interior factor, both sides of dT

    const StarSet& star() const { return star_; }
    const std::vector<ArcSpec>& arcs() const { return arcs_; }
    double blend() const { return blend_; }
    double tube_width() const { return tube_width_; }
    const AdmissibleProfile& profile() const { return profile_; }
    const SmoothBackground& background() const { return f0_; }
    BumpMode bump_mode() const { return bump_mode_; }

    // arc index owning angle t (ignoring blend zones); -1 in a blend zone
    // within `guard` of an arc boundary
    int arc_at(double t, double guard = 0.0) const;

    SampleGrid sample(int n, int threads = 1) const;

  private:
    StarSet star_;
    std::vector<ArcSpec> arcs_;
    SmoothBackground f0_;
    double blend_;
    BumpMode bump_mode_;
    AdmissibleProfile profile_;
    double tube_width_;

    double angular_weight(int arc, double theta) const;
};

CartoonFunction build_graded_cartoon(StarSet star, std::vector<ArcSpec> arcs,
                                     SmoothBackground f0 = SmoothBackground::zero(),
                                     double blend = 0.1,
                                     CartoonFunction::BumpMode bump = CartoonFunction::BumpMode::Tube,
                                     StepSpec smoothness = StepSpec::exponential());

namespace detail {

template <class F>
double nested_directional(F&& f, Vec2 v, int m, Vec2 x, double h) {
    auto d1 = [&](auto&& g, Vec2 p) {
        return (-g(p + 2.0 * h * v) + 8.0 * g(p + h * v) - 8.0 * g(p - h * v) +
                g(p - 2.0 * h * v)) /
               (12.0 * h);
    };
    if (m == 1) return d1(f, x);
    auto lower = [&](Vec2 p) { return nested_directional(f, v, m - 1, p, h); };
    return d1(lower, x);
}

} // namespace detail

// m-th order directional derivative along unit vector v by nested order-4
// central differences. Step is 1e-5 (1 + |x|) through second order; beyond
// that the roundoff amplification eps/h^m forces the step toward
// eps^{1/(4+m)}. A positive step_scale overrides the choice.
template <class F>
double directional_derivative(F&& f, Vec2 v, int m, Vec2 x, double step_scale = 0.0) {
    if (std::fabs(v.norm() - 1.0) > 1e-9)
        throw std::invalid_argument("direction must be a unit vector");
    if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (m == 0) return f(x);
    if (step_scale <= 0.0)
        step_scale = m <= 2 ? 1e-5 : std::pow(2.2e-16, 1.0 / double(4 + m));
    return detail::nested_directional(f, v, m, x, step_scale * (1.0 + x.norm()));
}

struct CensusSquare {
    std::int64_t k1 = 0, k2 = 0;
    BoundaryPoint representative;
};

struct CensusResult {
    std::int64_t total = 0;
    std::int64_t intersecting = 0;
    std::int64_t nonintersecting = 0;
    std::vector<CensusSquare> intersecting_squares;
};

// Classifies the 2^j dyadic squares of side 2 pi 2^{-j/2} as boundary
// intersecting or not, by dense boundary sampling plus corner parity.
CensusResult dyadic_square_census(const StarSet& star, int j);

} // namespace trigshear
