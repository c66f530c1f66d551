#include "trigshear/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trigshear {

std::vector<BoundaryPoint> neighborhood_hits(const BoundarySampling& boundary, Vec2 y,
                                             double eps) {
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    Vec2 p = two_pi * y;
    std::vector<BoundaryPoint> out;
    for (int i : boundary.near(p, eps)) {
        BoundaryPoint bp = boundary.point(i);
        // polish samples sitting close to the radius threshold
        if (std::fabs((bp.position - p).norm() - eps) < 2e-3) {
            double t = boundary.refine_parameter(p, bp.t);
            BoundaryPoint refined = boundary.star().boundary_point(t);
            if ((refined.position - p).norm() < (bp.position - p).norm()) bp = refined;
        }
        if ((bp.position - p).norm() < eps) out.push_back(bp);
    }
    return out;
}

namespace {

// window of normal angles for shear band (j, l): (theta_{j,l-2}, theta_{j,l+2})
void angle_window(Cone cone, int j, int l, double& lo, double& hi) {
    double a = orientation_angle(cone, j, l - 2);
    double b = orientation_angle(cone, j, l + 2);
    lo = std::min(a, b);
    hi = std::max(a, b);
}

bool in_window_directed(double angle, double lo, double hi) {
    double mid = 0.5 * (lo + hi);
    double off = angle_diff(angle, mid);
    return off > lo - mid && off < hi - mid;
}

} // namespace

OrientationSet orientation_set(const BoundarySampling& boundary, Cone cone, int j, int l,
                               double eps0, NormalMatch match) {
    if (j < 2 || j % 2 != 0) throw std::invalid_argument("scale j must be even and >= 2");
    if (std::abs(std::int64_t(l)) >= pow2(j / 2))
        throw std::invalid_argument("orientation sets need |l| < 2^(j/2)");
    if (eps0 < 0.0 || eps0 > 1.0) throw std::invalid_argument("eps0 must lie in [0, 1]");

    OrientationSet set;
    set.cone = cone;
    set.j = j;
    set.l = l;
    set.eps0 = eps0;
    angle_window(cone, j, l, set.theta_lo, set.theta_hi);
    if (eps0 == 0.0) return set;

    double eps = eps0 * std::pow(2.0, -j / 2);
    Vec2 cell = pattern_cell(cone, j);
    std::int64_t p1 = std::int64_t(std::llround(two_pi / cell.x1));
    std::int64_t p2 = std::int64_t(std::llround(two_pi / cell.x2));

    // Walk the boundary samples and mark the lattice nodes in reach; much
    // cheaper than scanning all 2^{3j/2} pattern points against the boundary.
    struct Best {
        int sample = -1;
        double dist = 1e300;
        bool antipodal = false;
    };
    std::map<std::size_t, Best> marked;
    for (int i = 0; i < boundary.size(); ++i) {
        const BoundaryPoint& bp = boundary.point(i);
        bool direct = in_window_directed(bp.normal_angle, set.theta_lo, set.theta_hi);
        bool flipped = match == NormalMatch::ModPi &&
                       in_window_directed(bp.normal_angle - pi, set.theta_lo, set.theta_hi);
        if (!direct && !flipped) continue;
        std::int64_t z1_lo = std::int64_t(std::ceil((bp.position.x1 - eps) / cell.x1));
        std::int64_t z1_hi = std::int64_t(std::floor((bp.position.x1 + eps) / cell.x1));
        std::int64_t z2_lo = std::int64_t(std::ceil((bp.position.x2 - eps) / cell.x2));
        std::int64_t z2_hi = std::int64_t(std::floor((bp.position.x2 + eps) / cell.x2));
        for (std::int64_t z2 = std::max(z2_lo, -p2 / 2); z2 <= std::min(z2_hi, p2 / 2 - 1); ++z2)
            for (std::int64_t z1 = std::max(z1_lo, -p1 / 2); z1 <= std::min(z1_hi, p1 / 2 - 1);
                 ++z1) {
                Vec2 node(double(z1) * cell.x1, double(z2) * cell.x2);
                double d = (bp.position - node).norm();
                if (d >= eps) continue;
                std::size_t idx = std::size_t(z2 + p2 / 2) * p1 + std::size_t(z1 + p1 / 2);
                Best& b = marked[idx];
                if (d < b.dist) {
                    b.sample = i;
                    b.dist = d;
                    b.antipodal = !direct && flipped;
                }
            }
    }

    set.hits.reserve(marked.size());
    for (const auto& [idx, best] : marked) {
        OrientationHit hit;
        hit.pattern_index = idx;
        std::int64_t z2 = std::int64_t(idx) / p1 - p2 / 2;
        std::int64_t z1 = std::int64_t(idx) % p1 - p1 / 2;
        hit.y = Vec2(double(z1) * cell.x1, double(z2) * cell.x2) * (1.0 / two_pi);
        hit.x0 = boundary.point(best.sample);
        hit.distance = best.dist;
        hit.antipodal = best.antipodal;
        set.hits.push_back(hit);
    }
    return set;
}

std::vector<SweepRow> sweep(const std::map<PyramidKey, CoefficientGrid>& grids,
                            const std::map<PyramidKey, OrientationSet>& sets) {
    std::vector<SweepRow> rows;
    for (const auto& [key, set] : sets) {
        auto git = grids.find(key);
        if (git == grids.end()) continue;
        const CoefficientGrid& grid = git->second;
        SweepRow row;
        row.cone = key.cone;
        row.l = key.l;
        row.theta = orientation_angle(key.cone, key.j, key.l);
        row.hit_count = set.hits.size();
        if (set.hits.empty()) {
            row.skipped = true;
        } else {
            double lo = 1e300, hi = 0.0;
            for (const OrientationHit& h : set.hits) {
                double m = std::abs(grid.values[h.pattern_index]);
                lo = std::min(lo, m);
                hi = std::max(hi, m);
            }
            row.l_max = hi;
            row.l_min = lo;
        }
        rows.push_back(row);
    }
    return rows;
}

FitResult decay_fit(const std::vector<std::pair<int, double>>& series) {
    FitResult fit;
    std::vector<std::pair<double, double>> pts;
    for (const auto& [j, mag] : series) {
        if (mag <= 0.0) {
            ++fit.points_dropped;
            continue;
        }
        pts.push_back({double(j), std::log2(mag)});
    }
    if (pts.size() < 3) throw std::invalid_argument("decay fit needs at least 3 positive points");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = double(pts.size());
    double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (auto [x, y] : pts) {
        double r = y - (fit.slope * x + fit.intercept);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / n);
    fit.points_used = int(pts.size());
    return fit;
}

Classification classify_order(double slope) {
    Classification c;
    double raw = -slope - 0.75;
    c.n_hat = std::max(0, int(std::lround(raw)));
    c.margin = std::fabs(raw - double(c.n_hat));
    c.indeterminate = c.margin > 0.35;
    return c;
}

std::pair<Cone, int> aligned_shear(double normal_angle, int j) {
    double half = std::pow(2.0, j / 2);
    // fold the orientation into (-pi/4, 3pi/4]
    double a = std::fmod(normal_angle, pi);
    if (a < 0) a += pi;
    if (a > 0.75 * pi) a -= pi;
    if (a <= 0.25 * pi) {
        int l = int(std::lround(std::tan(a) * half));
        return {Cone::Horizontal, std::clamp<int>(l, -int(half) + 1, int(half) - 1)};
    }
    int l = int(std::lround(std::cos(a) / std::sin(a) * half));
    return {Cone::Vertical, std::clamp<int>(l, -int(half) + 1, int(half) - 1)};
}

std::vector<std::pair<int, double>>
edge_probe_series(const std::map<PyramidKey, CoefficientGrid>& grids,
                  const BoundarySampling& boundary, double probe_t, double eps0,
                  double probe_radius, const std::vector<int>& scales) {
    BoundaryPoint probe = boundary.star().boundary_point(probe_t);
    std::vector<std::pair<int, double>> series;
    for (int j : scales) {
        auto [cone, l] = aligned_shear(probe.normal_angle, j);
        auto git = grids.find({cone, j, l});
        if (git == grids.end()) {
            series.push_back({j, 0.0});
            continue;
        }
        OrientationSet set = orientation_set(boundary, cone, j, l, eps0);
        double best = 0.0;
        for (const OrientationHit& h : set.hits) {
            if (probe_radius > 0.0 &&
                (h.x0.position - probe.position).norm() > probe_radius)
                continue;
            best = std::max(best, std::abs(git->second.values[h.pattern_index]));
        }
        series.push_back({j, best});
    }
    return series;
}

std::vector<std::pair<int, double>>
point_probe_series(const std::map<PyramidKey, CoefficientGrid>& grids, Vec2 point,
                   const std::vector<int>& scales) {
    std::vector<std::pair<int, double>> series;
    for (int j : scales) {
        double best = 0.0;
        for (Cone cone : {Cone::Horizontal, Cone::Vertical}) {
            auto git = grids.find({cone, j, 0});
            if (git == grids.end()) continue;
            Vec2 cell = pattern_cell(cone, j);
            std::int64_t p1 = std::int64_t(std::llround(two_pi / cell.x1));
            std::int64_t p2 = std::int64_t(std::llround(two_pi / cell.x2));
            std::int64_t z1 = std::int64_t(std::floor(point.x1 / cell.x1));
            std::int64_t z2 = std::int64_t(std::floor(point.x2 / cell.x2));
            for (std::int64_t d2 = 0; d2 <= 1; ++d2)
                for (std::int64_t d1 = 0; d1 <= 1; ++d1) {
                    std::int64_t a = z1 + d1, b = z2 + d2;
                    if (a < -p1 / 2 || a >= p1 / 2 || b < -p2 / 2 || b >= p2 / 2) continue;
                    best = std::max(best, std::abs(git->second.at(a, b)));
                }
        }
        series.push_back({j, best});
    }
    return series;
}

double bound_profile(const CensusResult& census, Cone cone, int j, int l, Vec2 y, int n,
                     int q) {
    if (q < 3) throw std::invalid_argument("bound profile needs q >= 3");
    double theta = orientation_angle(cone, j, l);
    double fine = std::pow(2.0, j), half = std::pow(2.0, j / 2);
    Vec2 p = two_pi * y;
    double acc = 0.0;
    for (const CensusSquare& sq : census.intersecting_squares) {
        double mis = std::fabs(std::sin(theta - sq.representative.normal_angle));
        double angular = std::pow(1.0 + half * mis, -2.5);
        double dist2 = (p - sq.representative.position).norm_sq();
        double local = std::pow(1.0 + fine * dist2, double(q));
        acc += angular / (std::pow(2.0, double(j) * n) * local);
    }
    return std::pow(2.0, -0.75 * j) * acc;
}

} // namespace trigshear
