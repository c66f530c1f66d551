#include "trigshear/shearlet.hpp"

#include <cmath>
#include <stdexcept>

namespace trigshear {

void validate_shear_index(int j, int l) {
    if (j < 2 || j % 2 != 0) throw std::invalid_argument("scale j must be even and >= 2");
    if (std::abs(std::int64_t(l)) > pow2(j / 2))
        throw std::invalid_argument("shear |l| must be <= 2^(j/2)");
}

ShearMatrix shear_matrix(Cone cone, int j, int l) {
    validate_shear_index(j, l);
    std::int64_t fine = pow2(j), coarse = pow2(j / 2);
    if (cone == Cone::Horizontal) return {fine, l * coarse, 0, coarse};
    return {coarse, 0, l * coarse, fine};
}

double orientation_angle(Cone cone, int j, int l) {
    // any integer shear is meaningful here: the angle windows reach two
    // shears past the seam
    validate_shear_index(j, 0);
    double t = double(l) * std::pow(2.0, -j / 2);
    if (cone == Cone::Horizontal) return std::atan(t);
    return 0.5 * pi - std::atan(t); // arccot
}

std::int64_t pattern_size(int j) { return pow2(j) * pow2(j / 2); }

std::vector<PatternPoint> pattern(Cone cone, int j, int l) {
    validate_shear_index(j, l);
    std::int64_t n_fine = pow2(j), n_coarse = pow2(j / 2);
    double h_fine = 1.0 / double(n_fine), h_coarse = 1.0 / double(n_coarse);

    std::vector<PatternPoint> pts;
    pts.reserve(std::size_t(n_fine * n_coarse));
    if (cone == Cone::Horizontal) {
        for (std::int64_t z2 = -n_coarse / 2; z2 < n_coarse / 2; ++z2)
            for (std::int64_t z1 = -n_fine / 2; z1 < n_fine / 2; ++z1)
                pts.push_back({z1, z2, Vec2(double(z1) * h_fine, double(z2) * h_coarse)});
    } else {
        for (std::int64_t z2 = -n_fine / 2; z2 < n_fine / 2; ++z2)
            for (std::int64_t z1 = -n_coarse / 2; z1 < n_coarse / 2; ++z1)
                pts.push_back({z1, z2, Vec2(double(z1) * h_coarse, double(z2) * h_fine)});
    }
    return pts;
}

Vec2 pattern_cell(Cone cone, int j) {
    double fine = two_pi * std::pow(2.0, -j), coarse = two_pi * std::pow(2.0, -j / 2);
    if (cone == Cone::Horizontal) return {fine, coarse};
    return {coarse, fine};
}

FrequencySupport::FrequencySupport(Cone cone, int j, int l) : cone_(cone), j_(j), l_(l) {
    validate_shear_index(j, l);
    double fine = std::pow(2.0, j);
    fine_min_ = std::int64_t(std::floor(fine / 3.0)) + 1;         // smallest integer > 2^j/3
    fine_max_ = std::int64_t(std::ceil(4.0 * fine / 3.0)) - 1;    // largest integer < (4/3) 2^j
}

namespace {

// coarse-coordinate band for a given fine coordinate:
// |2^{-j/2} kc - l 2^{-j} kf| < 2/3
void coarse_band(int j, int l, std::int64_t kf, std::int64_t& lo, std::int64_t& hi) {
    double center = double(l) * double(kf) * std::pow(2.0, -j / 2);
    double half = (2.0 / 3.0) * std::pow(2.0, j / 2);
    lo = std::int64_t(std::floor(center - half)) + 1;
    hi = std::int64_t(std::ceil(center + half)) - 1;
}

} // namespace

bool FrequencySupport::contains(std::int64_t k1, std::int64_t k2) const {
    std::int64_t kf = (cone_ == Cone::Horizontal) ? k1 : k2;
    std::int64_t kc = (cone_ == Cone::Horizontal) ? k2 : k1;
    double fine = std::pow(2.0, j_);
    double af = std::fabs(double(kf));
    if (!(af > fine / 3.0 && af < 4.0 * fine / 3.0)) return false;
    double band = std::fabs(double(kc) * std::pow(2.0, -j_ / 2) -
                            double(l_) * double(kf) * std::pow(2.0, -j_));
    return band < 2.0 / 3.0;
}

void FrequencySupport::for_each(const std::function<void(std::int64_t, std::int64_t)>& fn) const {
    for (int sign = 0; sign < 2; ++sign) {
        std::int64_t f0 = sign == 0 ? -fine_max_ : fine_min_;
        std::int64_t f1 = sign == 0 ? -fine_min_ : fine_max_;
        for (std::int64_t kf = f0; kf <= f1; ++kf) {
            std::int64_t lo, hi;
            coarse_band(j_, l_, kf, lo, hi);
            for (std::int64_t kc = lo; kc <= hi; ++kc) {
                if (cone_ == Cone::Horizontal) fn(kf, kc);
                else fn(kc, kf);
            }
        }
    }
}

std::int64_t FrequencySupport::max_abs_k1() const {
    if (cone_ == Cone::Horizontal) return fine_max_;
    std::int64_t lo, hi;
    coarse_band(j_, l_, l_ >= 0 ? fine_max_ : -fine_max_, lo, hi);
    return std::max(std::llabs(lo), std::llabs(hi));
}

std::int64_t FrequencySupport::max_abs_k2() const {
    if (cone_ == Cone::Vertical) return fine_max_;
    std::int64_t lo, hi;
    coarse_band(j_, l_, l_ >= 0 ? fine_max_ : -fine_max_, lo, hi);
    return std::max(std::llabs(lo), std::llabs(hi));
}

ShearletSystem::ShearletSystem(AdmissibleProfile profile) : profile_(std::move(profile)) {}

double ShearletSystem::window_eval(Cone cone, Vec2 x) const {
    if (cone == Cone::Horizontal) return profile_.tilde(x.x1) * profile_.value(x.x2);
    return profile_.value(x.x1) * profile_.tilde(x.x2);
}

double ShearletSystem::window_scaled_eval(Cone cone, int j, int l, Vec2 xi) const {
    validate_shear_index(j, l);
    double inv_fine = std::pow(2.0, -j), inv_coarse = std::pow(2.0, -j / 2);
    if (cone == Cone::Horizontal)
        return profile_.tilde(inv_fine * xi.x1) *
               profile_.value(inv_coarse * xi.x2 - double(l) * inv_fine * xi.x1);
    return profile_.value(inv_coarse * xi.x1 - double(l) * inv_fine * xi.x2) *
           profile_.tilde(inv_fine * xi.x2);
}

std::complex<double> ShearletSystem::space_eval(const ShearletIndex& index, Vec2 x) const {
    FrequencySupport support(index.cone, index.j, index.l);
    Vec2 shift = x - two_pi * index.y;
    std::complex<double> acc(0.0, 0.0);
    support.for_each([&](std::int64_t k1, std::int64_t k2) {
        double w = window_scaled_eval(index.cone, index.j, index.l,
                                      Vec2(double(k1), double(k2)));
        if (w == 0.0) return;
        double phase = double(k1) * shift.x1 + double(k2) * shift.x2;
        acc += w * std::complex<double>(std::cos(phase), std::sin(phase));
    });
    return std::pow(2.0, -0.75 * index.j) * acc;
}

} // namespace trigshear
