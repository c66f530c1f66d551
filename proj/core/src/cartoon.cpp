#include "trigshear/cartoon.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace trigshear {

double RadiusSeries::eval(double t) const {
    double r = constant;
    for (std::size_t m = 0; m < cosine.size(); ++m) r += cosine[m] * std::cos(double(m + 1) * t);
    for (std::size_t m = 0; m < sine.size(); ++m) r += sine[m] * std::sin(double(m + 1) * t);
    return r;
}

double RadiusSeries::d1(double t) const {
    double r = 0.0;
    for (std::size_t m = 0; m < cosine.size(); ++m) {
        double w = double(m + 1);
        r -= w * cosine[m] * std::sin(w * t);
    }
    for (std::size_t m = 0; m < sine.size(); ++m) {
        double w = double(m + 1);
        r += w * sine[m] * std::cos(w * t);
    }
    return r;
}

double RadiusSeries::d2(double t) const {
    double r = 0.0;
    for (std::size_t m = 0; m < cosine.size(); ++m) {
        double w = double(m + 1);
        r -= w * w * cosine[m] * std::cos(w * t);
    }
    for (std::size_t m = 0; m < sine.size(); ++m) {
        double w = double(m + 1);
        r -= w * w * sine[m] * std::sin(w * t);
    }
    return r;
}

double RadiusSeries::c2_bound() const {
    double b = 0.0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
        double t = two_pi * double(i) / n;
        b = std::max({b, std::fabs(eval(t)), std::fabs(d1(t)), std::fabs(d2(t))});
    }
    return b;
}

StarSet::StarSet(Vec2 origin, RadiusSeries radius)
    : origin_(origin), radius_(std::move(radius)) {
    const int n = 4096;
    min_radius_ = 1e300;
    max_radius_ = 0.0;
    double max_abs = 0.0;
    for (int i = 0; i < n; ++i) {
        double t = two_pi * double(i) / n;
        double r = radius_.eval(t);
        if (r <= 0.0) throw std::invalid_argument("radius function must be positive");
        min_radius_ = std::min(min_radius_, r);
        max_radius_ = std::max(max_radius_, r);
        Vec2 g = origin_ + r * unit_dir(t);
        max_abs = std::max({max_abs, std::fabs(g.x1), std::fabs(g.x2)});
    }
    if (max_abs >= pi) throw std::invalid_argument("region must stay inside (-pi, pi)^2");
    box_margin_ = pi - max_abs;
    tau_ = radius_.c2_bound();
}

BoundaryPoint StarSet::boundary_point(double t) const {
    double r = radius_.eval(t);
    if (r <= 0.0) throw std::domain_error("radius must be positive");
    double dr = radius_.d1(t);
    Vec2 dir = unit_dir(t);
    Vec2 tangent_dir(-dir.x2, dir.x1);
    Vec2 gamma = origin_ + r * dir;
    Vec2 dgamma = dr * dir + r * tangent_dir;
    Vec2 out = dgamma.rotated_cw(); // (r cos + r' sin, r sin - r' cos)
    double w = dgamma.norm();
    BoundaryPoint bp;
    bp.t = t;
    bp.position = gamma;
    bp.normal = out * (1.0 / w);
    bp.normal_angle = wrap_angle(std::atan2(bp.normal.x2, bp.normal.x1));
    bp.weight = w;
    return bp;
}

bool StarSet::contains(Vec2 x) const { return signed_radial_defect(x) > 0.0; }

double StarSet::signed_radial_defect(Vec2 x) const {
    Vec2 v = x - origin_;
    double rho = v.norm();
    if (rho == 0.0) return origin_defect_cap;
    double t = std::atan2(v.x2, v.x1);
    return radius_.eval(t) - rho;
}

BoundarySampling::BoundarySampling(const StarSet& star, int samples) : star_(star) {
    points_.reserve(samples);
    double prev_t = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = two_pi * double(i) / samples;
        points_.push_back(star.boundary_point(t));
        if (i > 0)
            arc_length_ += 0.5 * (points_[i].weight + points_[i - 1].weight) * (t - prev_t);
        prev_t = t;
    }
    arc_length_ += 0.5 * (points_.front().weight + points_.back().weight) *
                   (two_pi - prev_t);

    cells_ = 256;
    cell_size_ = two_pi / cells_;
    buckets_.assign(std::size_t(cells_) * cells_, {});
    for (int i = 0; i < (int)points_.size(); ++i)
        buckets_[bucket_index(points_[i].position)].push_back(i);
}

int BoundarySampling::bucket_index(Vec2 p) const {
    auto clampc = [&](double x) {
        int c = int(std::floor((x + pi) / cell_size_));
        return std::clamp(c, 0, cells_ - 1);
    };
    return clampc(p.x2) * cells_ + clampc(p.x1);
}

std::vector<int> BoundarySampling::near(Vec2 p, double radius) const {
    std::vector<int> out;
    int reach = int(std::ceil(radius / cell_size_)) + 1;
    int c1 = int(std::floor((p.x1 + pi) / cell_size_));
    int c2 = int(std::floor((p.x2 + pi) / cell_size_));
    double r2 = radius * radius;
    for (int b2 = std::max(0, c2 - reach); b2 <= std::min(cells_ - 1, c2 + reach); ++b2)
        for (int b1 = std::max(0, c1 - reach); b1 <= std::min(cells_ - 1, c1 + reach); ++b1)
            for (int i : buckets_[std::size_t(b2) * cells_ + b1])
                if ((points_[i].position - p).norm_sq() <= r2) out.push_back(i);
    std::sort(out.begin(), out.end());
    return out;
}

double BoundarySampling::refine_parameter(Vec2 p, double t0) const {
    // Newton on D(t) = |gamma(t) - p|^2
    double t = t0;
    for (int it = 0; it < 8; ++it) {
        double r = star_.radius().eval(t), dr = star_.radius().d1(t),
               ddr = star_.radius().d2(t);
        Vec2 dir = unit_dir(t), tan(-dir.x2, dir.x1);
        Vec2 g = star_.origin() + r * dir - p;
        Vec2 dg = dr * dir + r * tan;
        Vec2 ddg = (ddr - r) * dir + 2.0 * dr * tan;
        double d1 = 2.0 * g.dot(dg);
        double d2 = 2.0 * (dg.dot(dg) + g.dot(ddg));
        if (d2 <= 0.0) break;
        double step = d1 / d2;
        t -= step;
        if (std::fabs(step) < 1e-14) break;
    }
    return t;
}

BoundaryPoint BoundarySampling::closest(Vec2 p) const {
    // coarse pass over all samples, then Newton polish
    double best = 1e300;
    int best_i = 0;
    for (int i = 0; i < (int)points_.size(); ++i) {
        double d = (points_[i].position - p).norm_sq();
        if (d < best) {
            best = d;
            best_i = i;
        }
    }
    double t = refine_parameter(p, points_[best_i].t);
    BoundaryPoint bp = star_.boundary_point(t);
    if ((bp.position - p).norm_sq() > best) return points_[best_i];
    return bp;
}

double BoundarySampling::distance(Vec2 p) const { return (closest(p).position - p).norm(); }

double SmoothBackground::eval(Vec2 x, const AdmissibleProfile& profile) const {
    if (kind == Kind::Zero) return 0.0;
    double u = (x - center).norm() / radius;
    return amplitude * profile.value(2.0 * u / 3.0);
}

namespace {

void validate_arcs(const std::vector<ArcSpec>& arcs, double blend) {
    if (arcs.empty()) throw std::invalid_argument("at least one arc required");
    for (const ArcSpec& a : arcs)
        if (a.order < 0) throw std::invalid_argument("arc order must be >= 0");
    if (arcs.size() == 1) return;
    // sorted starts, contiguous coverage of [0, 2pi)
    double covered = 0.0;
    double shortest = two_pi;
    for (std::size_t s = 0; s < arcs.size(); ++s) {
        double len = wrap_angle(arcs[s].to - arcs[s].from);
        if (len == 0.0) throw std::invalid_argument("degenerate arc");
        covered += len;
        shortest = std::min(shortest, len);
        const ArcSpec& next = arcs[(s + 1) % arcs.size()];
        if (std::fabs(angle_diff(next.from, arcs[s].to)) > 1e-12)
            throw std::invalid_argument("arcs must partition [0, 2pi) contiguously");
    }
    if (std::fabs(covered - two_pi) > 1e-9)
        throw std::invalid_argument("arcs must cover the full circle");
    if (blend >= 0.5 * shortest)
        throw std::invalid_argument("blend width must be below half the shortest arc");
}

} // namespace

CartoonFunction::CartoonFunction(StarSet star, std::vector<ArcSpec> arcs,
                                 SmoothBackground f0, double blend, BumpMode bump,
                                 StepSpec smoothness)
    : star_(std::move(star)), arcs_(std::move(arcs)), f0_(f0), blend_(blend),
      bump_mode_(bump), profile_(smoothness) {
    validate_arcs(arcs_, blend_);
    tube_width_ = std::min(0.5, 0.5 * star_.min_radius());
    tube_width_ = std::min(tube_width_, 0.9 * star_.box_margin());
}

int CartoonFunction::arc_at(double t, double guard) const {
    double tt = wrap_angle(t);
    for (std::size_t s = 0; s < arcs_.size(); ++s) {
        double len = arcs_.size() == 1 ? two_pi : wrap_angle(arcs_[s].to - arcs_[s].from);
        double off = wrap_angle(tt - arcs_[s].from);
        if (off < len) {
            if (guard > 0.0 && (off < guard || len - off < guard) && arcs_.size() > 1)
                return -1;
            return int(s);
        }
    }
    return int(arcs_.size()) - 1;
}

double CartoonFunction::angular_weight(int arc, double theta) const {
    if (arcs_.size() == 1) return 1.0;
    const ArcSpec& a = arcs_[arc];
    double len = wrap_angle(a.to - a.from);
    // transition zones of width blend are centered on the arc endpoints
    double u_start = angle_diff(theta, a.from);
    if (std::fabs(u_start) <= 0.5 * blend_)
        return smooth_step(u_start / blend_ + 0.5, profile_.step());
    double u_end = angle_diff(theta, a.to);
    if (std::fabs(u_end) <= 0.5 * blend_)
        return smooth_step(-u_end / blend_ + 0.5, profile_.step());
    return wrap_angle(theta - a.from) < len ? 1.0 : 0.0;
}

double CartoonFunction::f0_eval(Vec2 x) const { return f0_.eval(x, profile_); }

double CartoonFunction::f1_eval(Vec2 x) const {
    double d = star_.signed_radial_defect(x);
    double bump = 1.0;
    if (bump_mode_ == BumpMode::Tube) {
        bump = profile_.value(2.0 * d / (3.0 * tube_width_));
        if (bump == 0.0) return 0.0;
    }
    Vec2 v = x - star_.origin();
    double theta = (v.x1 == 0.0 && v.x2 == 0.0) ? 0.0 : std::atan2(v.x2, v.x1);
    double acc = 0.0;
    for (std::size_t s = 0; s < arcs_.size(); ++s) {
        double w = angular_weight(int(s), theta);
        if (w == 0.0) continue;
        double dn = 1.0;
        for (int i = 0; i < arcs_[s].order; ++i) dn *= d;
        acc += w * arcs_[s].amplitude * dn;
    }
    return acc * bump;
}

double CartoonFunction::eval(Vec2 x) const {
    double f = f0_eval(x);
    if (star_.signed_radial_defect(x) > 0.0) f += f1_eval(x);
    return f;
}

SampleGrid CartoonFunction::sample(int n, int threads) const {
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two");
    SampleGrid grid(n);
    double h = two_pi / n;
    auto rows = [&](int row0, int row1) {
        for (int m2 = row0; m2 < row1; ++m2) {
            double x2 = -pi + h * m2;
            for (int m1 = 0; m1 < n; ++m1)
                grid.at(m1, m2) = eval(Vec2(-pi + h * m1, x2));
        }
    };
    if (threads <= 1) {
        rows(0, n);
    } else {
        std::vector<std::thread> pool;
        int chunk = (n + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            int lo = t * chunk, hi = std::min(n, lo + chunk);
            if (lo < hi) pool.emplace_back(rows, lo, hi);
        }
        for (std::thread& th : pool) th.join();
    }
    return grid;
}

CartoonFunction build_graded_cartoon(StarSet star, std::vector<ArcSpec> arcs,
                                     SmoothBackground f0, double blend,
                                     CartoonFunction::BumpMode bump, StepSpec smoothness) {
    return CartoonFunction(std::move(star), std::move(arcs), f0, blend, bump, smoothness);
}

CensusResult dyadic_square_census(const StarSet& star, int j) {
    if (j < 2 || j % 2 != 0) throw std::invalid_argument("scale j must be even and >= 2");
    std::int64_t cells = std::int64_t(1) << (j / 2);
    double width = two_pi / double(cells);

    auto cell_of = [&](double x) {
        std::int64_t c = std::int64_t(std::floor((x + pi) / width));
        return std::clamp<std::int64_t>(c, 0, cells - 1);
    };

    std::vector<char> hit(std::size_t(cells) * cells, 0);
    std::vector<int> rep(std::size_t(cells) * cells, -1);

    // boundary samples
    int samples = int(64 * cells);
    std::vector<BoundaryPoint> pts;
    pts.reserve(samples);
    for (int i = 0; i < samples; ++i) {
        double t = two_pi * double(i) / samples;
        pts.push_back(star.boundary_point(t));
        const BoundaryPoint& b = pts.back();
        std::size_t idx = std::size_t(cell_of(b.position.x2)) * cells + cell_of(b.position.x1);
        if (!hit[idx]) {
            hit[idx] = 1;
            rep[idx] = i;
        }
    }

    // corner parity: mixed corner membership forces an intersection
    std::vector<char> inside(std::size_t(cells + 1) * (cells + 1));
    for (std::int64_t c2 = 0; c2 <= cells; ++c2)
        for (std::int64_t c1 = 0; c1 <= cells; ++c1)
            inside[std::size_t(c2) * (cells + 1) + c1] =
                star.contains(Vec2(-pi + width * double(c1), -pi + width * double(c2))) ? 1 : 0;
    for (std::int64_t c2 = 0; c2 < cells; ++c2)
        for (std::int64_t c1 = 0; c1 < cells; ++c1) {
            int s = inside[std::size_t(c2) * (cells + 1) + c1] +
                    inside[std::size_t(c2) * (cells + 1) + c1 + 1] +
                    inside[std::size_t(c2 + 1) * (cells + 1) + c1] +
                    inside[std::size_t(c2 + 1) * (cells + 1) + c1 + 1];
            if (s > 0 && s < 4) hit[std::size_t(c2) * cells + c1] = 1;
        }

    CensusResult out;
    out.total = cells * cells;
    for (std::int64_t c2 = 0; c2 < cells; ++c2)
        for (std::int64_t c1 = 0; c1 < cells; ++c1) {
            std::size_t idx = std::size_t(c2) * cells + c1;
            if (!hit[idx]) continue;
            ++out.intersecting;
            CensusSquare sq;
            sq.k1 = c1;
            sq.k2 = c2;
            if (rep[idx] >= 0) {
                sq.representative = pts[rep[idx]];
            } else {
                // parity-marked square missed by the samples: take the sample
                // closest to the square center
                Vec2 center(-pi + width * (double(c1) + 0.5), -pi + width * (double(c2) + 0.5));
                double best = 1e300;
                int bi = 0;
                for (int i = 0; i < (int)pts.size(); ++i) {
                    double d = (pts[i].position - center).norm_sq();
                    if (d < best) {
                        best = d;
                        bi = i;
                    }
                }
                sq.representative = pts[bi];
            }
            out.intersecting_squares.push_back(sq);
        }
    out.nonintersecting = out.total - out.intersecting;
    return out;
}

} // namespace trigshear
