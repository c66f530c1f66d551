#include "trigshear/transform.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

#include "trigshear/cartoon.hpp"

namespace trigshear {

namespace {

// FFTW plan creation is not thread safe; execution on distinct plans is.
std::mutex& fftw_mutex() {
    static std::mutex m;
    return m;
}

struct PatternPeriods {
    std::int64_t p1, p2;
};

PatternPeriods periods(Cone cone, int j) {
    std::int64_t fine = pow2(j), coarse = pow2(j / 2);
    if (cone == Cone::Horizontal) return {fine, coarse};
    return {coarse, fine};
}

std::int64_t positive_mod(std::int64_t k, std::int64_t p) {
    std::int64_t r = k % p;
    return r < 0 ? r + p : r;
}

void check_support_fits(const FrequencySupport& support, int n) {
    if (n <= 0) throw std::invalid_argument("empty spectrum");
    if (support.max_abs_k1() > n / 2 - 1 || support.max_abs_k2() > n / 2 - 1)
        throw std::invalid_argument(
            "frequency support of scale j=" + std::to_string(support.scale()) +
            " exceeds spectrum resolution N=" + std::to_string(n));
}

} // namespace

std::complex<double> SpectrumGrid::at(std::int64_t k1, std::int64_t k2) const {
    if (std::llabs(k1) > n_ / 2 || std::llabs(k2) > n_ / 2)
        throw std::out_of_range("frequency outside spectrum range");
    bool conj = k1 < 0;
    if (conj) {
        k1 = -k1;
        k2 = -k2;
    }
    std::int64_t row = positive_mod(k2, n_);
    std::complex<double> c = half_[std::size_t(row) * (n_ / 2 + 1) + k1];
    return conj ? std::conj(c) : c;
}

SpectrumGrid fourier_coefficients(const SampleGrid& samples) {
    int n = samples.n;
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("grid size must be a power of two");

    SpectrumGrid out;
    out.n_ = n;
    out.half_.resize(std::size_t(n) * (n / 2 + 1));

    double* in = fftw_alloc_real(std::size_t(n) * n);
    std::copy(samples.values.begin(), samples.values.end(), in);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_r2c_2d(n, n, in,
                                    reinterpret_cast<fftw_complex*>(out.half_.data()),
                                    FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);

    // c_k = N^{-2} (-1)^{k1+k2} F(k): the sign carries the -pi grid offset
    double scale = 1.0 / (double(n) * double(n));
    for (std::int64_t row = 0; row < n; ++row)
        for (std::int64_t col = 0; col <= n / 2; ++col) {
            double s = ((row + col) % 2 == 0) ? scale : -scale;
            out.half_[std::size_t(row) * (n / 2 + 1) + col] *= s;
        }
    return out;
}

std::complex<double> CoefficientGrid::at(std::int64_t z1, std::int64_t z2) const {
    PatternPeriods p = periods(cone, j);
    std::int64_t i1 = z1 + p.p1 / 2, i2 = z2 + p.p2 / 2;
    if (i1 < 0 || i1 >= p.p1 || i2 < 0 || i2 >= p.p2)
        throw std::out_of_range("pattern index out of range");
    return values[std::size_t(i2) * p.p1 + i1];
}

double CoefficientGrid::max_abs() const {
    double m = 0.0;
    for (const std::complex<double>& v : values) m = std::max(m, std::abs(v));
    return m;
}

std::complex<double> analysis_single(const SpectrumGrid& spectrum, const ShearletSystem& system,
                                     Cone cone, int j, int l, Vec2 y) {
    FrequencySupport support(cone, j, l);
    check_support_fits(support, spectrum.size());
    std::complex<double> acc(0.0, 0.0);
    support.for_each([&](std::int64_t k1, std::int64_t k2) {
        double w = system.window_scaled_eval(cone, j, l, Vec2(double(k1), double(k2)));
        if (w == 0.0) return;
        double phase = two_pi * (double(k1) * y.x1 + double(k2) * y.x2);
        acc += spectrum.at(k1, k2) * w *
               std::complex<double>(std::cos(phase), std::sin(phase));
    });
    return std::pow(2.0, -0.75 * j) * acc;
}

CoefficientGrid analysis_all(const SpectrumGrid& spectrum, const ShearletSystem& system,
                             Cone cone, int j, int l) {
    FrequencySupport support(cone, j, l);
    check_support_fits(support, spectrum.size());
    PatternPeriods p = periods(cone, j);

    // fold c_k Psi(k) over residue classes modulo the pattern periods;
    // e^{2 pi i k.y} only depends on k mod (p1, p2) on the pattern grid
    std::vector<std::complex<double>> folded(std::size_t(p.p1) * p.p2, {0.0, 0.0});
    support.for_each([&](std::int64_t k1, std::int64_t k2) {
        double w = system.window_scaled_eval(cone, j, l, Vec2(double(k1), double(k2)));
        if (w == 0.0) return;
        std::int64_t r1 = positive_mod(k1, p.p1), r2 = positive_mod(k2, p.p2);
        folded[std::size_t(r2) * p.p1 + r1] += spectrum.at(k1, k2) * w;
    });

    std::vector<std::complex<double>> transformed(folded.size());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        plan = fftw_plan_dft_2d(int(p.p2), int(p.p1),
                                reinterpret_cast<fftw_complex*>(folded.data()),
                                reinterpret_cast<fftw_complex*>(transformed.data()),
                                FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(fftw_mutex());
        fftw_destroy_plan(plan);
    }

    CoefficientGrid grid;
    grid.cone = cone;
    grid.j = j;
    grid.l = l;
    grid.values.resize(folded.size());
    double scale = std::pow(2.0, -0.75 * j);
    for (std::int64_t z2 = -p.p2 / 2; z2 < p.p2 / 2; ++z2)
        for (std::int64_t z1 = -p.p1 / 2; z1 < p.p1 / 2; ++z1) {
            std::size_t src = std::size_t(positive_mod(z2, p.p2)) * p.p1 + positive_mod(z1, p.p1);
            std::size_t dst = std::size_t(z2 + p.p2 / 2) * p.p1 + (z1 + p.p1 / 2);
            grid.values[dst] = scale * transformed[src];
        }
    return grid;
}

int default_resolution(int j, int oversample) {
    if (oversample < 1 || (oversample & (oversample - 1)) != 0)
        throw std::invalid_argument("oversample factor must be a power of two");
    return int(pow2(j + 3)) * oversample;
}

std::map<PyramidKey, CoefficientGrid>
coefficient_pyramid(const CartoonFunction& f, const ShearletSystem& system,
                    const std::vector<PyramidRequest>& requests, int oversample, int threads) {
    // group by scale so each spectrum is computed once
    std::map<int, std::set<std::pair<Cone, int>>> by_scale;
    for (const PyramidRequest& r : requests) {
        validate_shear_index(r.j, 0);
        for (Cone c : r.cones)
            for (int l : r.shears) by_scale[r.j].insert({c, l});
    }

    std::map<PyramidKey, CoefficientGrid> out;
    for (const auto& [j, tasks] : by_scale) {
        int n = default_resolution(j, oversample);
        SampleGrid samples = f.sample(n, threads);
        SpectrumGrid spectrum = fourier_coefficients(samples);
        samples = SampleGrid(); // release before the analysis fan-out

        std::vector<std::pair<Cone, int>> list(tasks.begin(), tasks.end());
        std::vector<CoefficientGrid> grids(list.size());
        auto run = [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i)
                grids[i] = analysis_all(spectrum, system, list[i].first, j, list[i].second);
        };
        if (threads <= 1 || list.size() <= 1) {
            run(0, list.size());
        } else {
            std::vector<std::thread> pool;
            std::size_t chunk = (list.size() + threads - 1) / threads;
            for (int t = 0; t < threads; ++t) {
                std::size_t lo = t * chunk, hi = std::min(list.size(), lo + chunk);
                if (lo < hi) pool.emplace_back(run, lo, hi);
            }
            for (std::thread& th : pool) th.join();
        }
        for (std::size_t i = 0; i < list.size(); ++i)
            out[{list[i].first, j, list[i].second}] = std::move(grids[i]);
    }
    return out;
}

} // namespace trigshear
