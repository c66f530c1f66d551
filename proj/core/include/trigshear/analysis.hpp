#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "trigshear/cartoon.hpp"
#include "trigshear/transform.hpp"

namespace trigshear {

// Boundary pieces within distance eps of the torus point 2*pi*y, from dense
// parameter sampling with Newton refinement near the radius threshold.
std::vector<BoundaryPoint> neighborhood_hits(const BoundarySampling& boundary, Vec2 y,
                                             double eps);

// How pattern points are matched against the boundary normal:
//  - ModPi:    the normal is treated as an undirected orientation; both a
//              boundary piece and its antipodal twin match a shear band
//  - Directed: the literal signed normal angle must fall in the band
enum class NormalMatch { ModPi, Directed };

struct OrientationHit {
    std::size_t pattern_index = 0;
    Vec2 y;
    BoundaryPoint x0;    // matched boundary point
    double distance = 0; // |2 pi y - x0|
    bool antipodal = false; // matched through the +pi flipped window
};

struct OrientationSet {
    Cone cone = Cone::Horizontal;
    int j = 2;
    int l = 0;
    double eps0 = 0.5;
    double theta_lo = 0.0, theta_hi = 0.0; // normal-angle window
    std::vector<OrientationHit> hits;

    bool empty() const { return hits.empty(); }
};

// Pattern points y with some boundary point x0 within eps0 2^{-j/2} of 2*pi*y
// whose normal angle lies in (theta_{j,l-2}, theta_{j,l+2}).
OrientationSet orientation_set(const BoundarySampling& boundary, Cone cone, int j, int l,
                               double eps0, NormalMatch match = NormalMatch::ModPi);

struct SweepRow {
    Cone cone = Cone::Horizontal;
    int l = 0;
    double theta = 0.0;
    std::size_t hit_count = 0;
    double l_max = 0.0;
    double l_min = 0.0;
    bool skipped = false; // empty orientation set
};

// Extremal coefficient magnitudes over each orientation set, Fig.-2 style.
std::vector<SweepRow> sweep(const std::map<PyramidKey, CoefficientGrid>& grids,
                            const std::map<PyramidKey, OrientationSet>& sets);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0; // rms residual of the fit
    int points_used = 0;
    int points_dropped = 0;
};

// Least squares of log2(magnitude) against j. Zero magnitudes are dropped;
// fewer than 3 surviving points is an error.
FitResult decay_fit(const std::vector<std::pair<int, double>>& series);

struct Classification {
    int n_hat = 0;
    double margin = 0.0;
    bool indeterminate = false; // margin above the rejection threshold
};

// n = round(-slope - 3/4), clamped to >= 0; indeterminate when the rounding
// margin exceeds 0.35.
Classification classify_order(double slope);

// Shear best aligned with normal angle theta at scale j, and its cone.
std::pair<Cone, int> aligned_shear(double normal_angle, int j);

// Shape of the scale-j upper bound for one translate:
//   2^{-3j/4} sum over boundary-intersecting squares of
//   (1 + 2^{j/2} |sin(theta_{j,l} - theta_x0)|)^{-5/2}
//   / (2^{jn} (1 + 2^j |2 pi y - x0|^2)^q)
double bound_profile(const CensusResult& census, Cone cone, int j, int l, Vec2 y, int n,
                     int q);

// Per-scale L_max at the shear best aligned with the boundary normal at
// parameter probe_t, restricted to hits within probe_radius of the probe
// point (probe_radius <= 0 disables the restriction). Missing grids or empty
// sets contribute magnitude 0.
std::vector<std::pair<int, double>>
edge_probe_series(const std::map<PyramidKey, CoefficientGrid>& grids,
                  const BoundarySampling& boundary, double probe_t, double eps0,
                  double probe_radius, const std::vector<int>& scales);

// Per-scale reading for an off-edge probe: the largest coefficient magnitude
// among the pattern nodes of the (h, 0) and (v, 0) grids nearest to the point.
std::vector<std::pair<int, double>>
point_probe_series(const std::map<PyramidKey, CoefficientGrid>& grids, Vec2 point,
                   const std::vector<int>& scales);

} // namespace trigshear
