#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <vector>

#include "trigshear/grid.hpp"
#include "trigshear/shearlet.hpp"

namespace trigshear {

// Fourier coefficients c_k of a real N x N sample grid,
// c_k = N^{-2} sum_m f(x_m) e^{-i k.x_m} for k in [-N/2, N/2)^2.
// Stored as the real-input half spectrum; conjugate symmetry supplies the
// other half.
class SpectrumGrid {
  public:
    SpectrumGrid() = default;

    int size() const { return n_; }
    std::complex<double> at(std::int64_t k1, std::int64_t k2) const;

    friend SpectrumGrid fourier_coefficients(const SampleGrid& samples);

  private:
    int n_ = 0;
    std::vector<std::complex<double>> half_; // (N/2+1) x N, k1 fastest
};

// Trapezoidal / DFT approximation of c_k(f) via a real-to-complex fast
// transform; O(N^2 log N). Throws on non-power-of-two sizes.
SpectrumGrid fourier_coefficients(const SampleGrid& samples);

// Shearlet coefficients over one pattern grid, in pattern() order.
struct CoefficientGrid {
    Cone cone = Cone::Horizontal;
    int j = 2;
    int l = 0;
    std::vector<std::complex<double>> values;

    // value at pattern indices (z1, z2)
    std::complex<double> at(std::int64_t z1, std::int64_t z2) const;
    double max_abs() const;
};

// Direct evaluation of one coefficient:
//   2^{-3j/4} sum_{k in supp} c_k Psi_{j,l}(k) e^{2 pi i k.y}.
// Throws when the frequency support does not fit inside [-N/2, N/2)^2.
std::complex<double> analysis_single(const SpectrumGrid& spectrum, const ShearletSystem& system,
                                     Cone cone, int j, int l, Vec2 y);

// All pattern translates at once: fold c_k Psi(k) over residue classes modulo
// the pattern periods, then one inverse fast transform. Pointwise equal to
// analysis_single.
CoefficientGrid analysis_all(const SpectrumGrid& spectrum, const ShearletSystem& system,
                             Cone cone, int j, int l);

struct PyramidKey {
    Cone cone;
    int j;
    int l;
    bool operator<(const PyramidKey& o) const {
        if (cone != o.cone) return cone < o.cone;
        if (j != o.j) return j < o.j;
        return l < o.l;
    }
};

struct PyramidRequest {
    int j;
    std::vector<Cone> cones;
    std::vector<int> shears;
};

// Default spectral resolution per scale: N(j) = 2^{j+3} * oversample.
int default_resolution(int j, int oversample = 1);

// Batch driver: per scale, sample f at N(j), transform once and run
// analysis_all for every requested (cone, l).
std::map<PyramidKey, CoefficientGrid>
coefficient_pyramid(const class CartoonFunction& f, const ShearletSystem& system,
                    const std::vector<PyramidRequest>& requests, int oversample = 1,
                    int threads = 1);

} // namespace trigshear
