#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

#include "trigshear/admissible.hpp"
#include "trigshear/vec2.hpp"

namespace trigshear {

// Validates j even and >= 2, |l| <= 2^{j/2}; throws std::invalid_argument.
void validate_shear_index(int j, int l);

inline std::int64_t pow2(int e) { return std::int64_t(1) << e; }

// 2x2 integer shear-scaling matrix N_{j,l}.
// Horizontal: [[2^j, l 2^{j/2}], [0, 2^{j/2}]], vertical is the swapped form.
struct ShearMatrix {
    std::int64_t a11 = 0, a12 = 0, a21 = 0, a22 = 0;
    std::int64_t determinant() const { return a11 * a22 - a12 * a21; }
};

ShearMatrix shear_matrix(Cone cone, int j, int l);

// Orientation of the (j,l) frequency band: arctan(l 2^{-j/2}) for the
// horizontal cone, arccot(l 2^{-j/2}) for the vertical one.
double orientation_angle(Cone cone, int j, int l);

struct PatternPoint {
    std::int64_t z1 = 0, z2 = 0;
    Vec2 y; // torus point is 2*pi*y
};

// Translation lattice P(N_{j,l}): 2^{3j/2} points, z1 fastest.
// Horizontal: y = (2^{-j} z1, 2^{-j/2} z2) with z1 in [-2^{j-1}, 2^{j-1}),
// z2 in [-2^{j/2-1}, 2^{j/2-1}); vertical swapped. Independent of l.
std::vector<PatternPoint> pattern(Cone cone, int j, int l);
std::int64_t pattern_size(int j);
// lattice spacings of 2*pi*y per coordinate
Vec2 pattern_cell(Cone cone, int j);

// Integer frequencies that can carry a nonzero window value Psi_{j,l}(k).
// For the horizontal cone the predicate is
//   2^j/3 < |k1| < (4/3) 2^j  and  |2^{-j/2} k2 - l 2^{-j} k1| < 2/3,
// swapped for the vertical cone. The box bounds are the integer hull.
class FrequencySupport {
  public:
    FrequencySupport(Cone cone, int j, int l);

    bool contains(std::int64_t k1, std::int64_t k2) const;
    // deterministic fine-axis-major enumeration of the integer box
    void for_each(const std::function<void(std::int64_t, std::int64_t)>& fn) const;

    std::int64_t fine_min() const { return fine_min_; }  // lower end of the positive fine band
    std::int64_t fine_max() const { return fine_max_; }  // upper end (inclusive)
    std::int64_t max_abs_k1() const;
    std::int64_t max_abs_k2() const;

    Cone cone() const { return cone_; }
    int scale() const { return j_; }
    int shear() const { return l_; }

  private:
    Cone cone_;
    int j_, l_;
    std::int64_t fine_min_, fine_max_;
};

struct ShearletIndex {
    Cone cone = Cone::Horizontal;
    int j = 2;
    int l = 0;
    Vec2 y;
};

// Window evaluations and space-domain synthesis for one admissible profile.
class ShearletSystem {
  public:
    explicit ShearletSystem(AdmissibleProfile profile = AdmissibleProfile());

    const AdmissibleProfile& profile() const { return profile_; }

    double window_eval(Cone cone, Vec2 x) const;
    // Psi_{j,l}(xi) = Psi(N_{j,l}^{-T} xi)
    double window_scaled_eval(Cone cone, int j, int l, Vec2 xi) const;

    // psi_{j,l,y}(x) = 2^{-3j/4} sum_k Psi_{j,l}(k) e^{i k.(x - 2 pi y)},
    // summed over the frequency support box
    std::complex<double> space_eval(const ShearletIndex& index, Vec2 x) const;

  private:
    AdmissibleProfile profile_;
};

} // namespace trigshear
