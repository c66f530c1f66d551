#include "trigshear/admissible.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace trigshear {

char cone_char(Cone c) { return c == Cone::Horizontal ? 'h' : 'v'; }

Cone parse_cone(char c) {
    if (c == 'h' || c == 'H') return Cone::Horizontal;
    if (c == 'v' || c == 'V') return Cone::Vertical;
    throw std::invalid_argument("cone must be 'h' or 'v'");
}

StepSpec StepSpec::parse(const std::string& name) {
    if (name == "exp") return exponential();
    if (name.rfind("poly:", 0) == 0) {
        int q = std::stoi(name.substr(5));
        if (q < 1 || q > 12) throw std::invalid_argument("poly step order must be in [1, 12]");
        return polynomial(q);
    }
    throw std::invalid_argument("unknown step generator '" + name + "' (want exp or poly:q)");
}

std::string StepSpec::name() const {
    if (kind == Kind::Exp) return "exp";
    return "poly:" + std::to_string(order);
}

namespace {

// exp(-1/x) underflows long before this; clamping avoids Inf*0 in derivative
// chains near the support edge
constexpr double kExpClampInverse = 700.0;

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * double(n - k + i) / double(i);
    return r;
}

// s(x) = exp(-1/x) for x > 0, extended by 0. Derivatives are
// s^(n)(x) = exp(-s) P_n(s) with s = 1/x and P_{n+1} = s^2 (P_n - P_n').
// Coefficient tables are built on demand and cached per order.
const std::vector<double>& bump_poly(int n) {
    static std::vector<std::vector<double>> table = {{1.0}}; // P_0 = 1
    while ((int)table.size() <= n) {
        const std::vector<double>& p = table.back();
        std::vector<double> next(p.size() + 2, 0.0);
        for (int k = 0; k < (int)p.size(); ++k) {
            next[k + 2] += p[k];                       // s^2 * P_n
            if (k >= 1) next[k + 1] -= p[k] * double(k); // -s^2 * P_n'
        }
        table.push_back(std::move(next));
    }
    return table[n];
}

double bump_derivative(double x, int n) {
    if (x <= 1.0 / kExpClampInverse) return 0.0;
    double s = 1.0 / x;
    const std::vector<double>& p = bump_poly(n);
    double poly = 0.0;
    for (int k = (int)p.size() - 1; k >= 0; --k) poly = poly * s + p[k];
    return std::exp(-s) * poly;
}

double exp_step_derivative(double x, int r) {
    if (x <= 0.0) return r == 0 ? 0.0 : 0.0;
    if (x >= 1.0) return r == 0 ? 1.0 : 0.0;
    // h = N/D with N(x) = s(x), D(x) = s(x) + s(1-x); differentiate the
    // quotient through the recursion N^(k) = sum binom(k,i) h^(i) D^(k-i)
    std::vector<double> nd(r + 1), dd(r + 1), hd(r + 1);
    for (int k = 0; k <= r; ++k) {
        double a = bump_derivative(x, k);
        double b = bump_derivative(1.0 - x, k);
        nd[k] = a;
        dd[k] = a + (k % 2 == 0 ? b : -b);
    }
    for (int k = 0; k <= r; ++k) {
        double acc = nd[k];
        for (int i = 0; i < k; ++i) acc -= binomial(k, i) * hd[i] * dd[k - i];
        hd[k] = acc / dd[0];
    }
    return hd[r];
}

// Degree-(2q+1) polynomial step: S_q(x) = x^{q+1} sum_k C(q+k,k) C(2q+1,q-k) (-x)^k.
// Monomial coefficients cached per q.
const std::vector<double>& poly_step_coeffs(int q) {
    static std::vector<std::vector<double>> cache(16);
    if (cache[q].empty()) {
        std::vector<double> c(2 * q + 2, 0.0);
        double sign = 1.0;
        for (int k = 0; k <= q; ++k) {
            c[q + 1 + k] = sign * binomial(q + k, k) * binomial(2 * q + 1, q - k);
            sign = -sign;
        }
        cache[q] = std::move(c);
    }
    return cache[q];
}

double poly_step_derivative(double x, int r, int q) {
    if (x <= 0.0) return r == 0 ? 0.0 : 0.0;
    if (x >= 1.0) return r == 0 ? 1.0 : 0.0;
    const std::vector<double>& c = poly_step_coeffs(q);
    double acc = 0.0;
    for (int k = (int)c.size() - 1; k >= r; --k) {
        double f = c[k];
        for (int i = 0; i < r; ++i) f *= double(k - i);
        acc = acc * x + f;
    }
    return acc;
}

} // namespace

double smooth_step(double x, const StepSpec& spec) {
    return smooth_step_derivative(x, 0, spec);
}

double smooth_step_derivative(double x, int r, const StepSpec& spec) {
    if (r < 0) throw std::invalid_argument("derivative order must be >= 0");
    if (spec.kind == StepSpec::Kind::Exp) return exp_step_derivative(x, r);
    if (r > spec.order)
        throw std::invalid_argument("derivative order exceeds step smoothness C^" +
                                    std::to_string(spec.order));
    return poly_step_derivative(x, r, spec.order);
}

AdmissibleProfile::AdmissibleProfile(StepSpec spec) : spec_(spec) {
    if (spec.kind == StepSpec::Kind::Poly && (spec.order < 1 || spec.order > 12))
        throw std::invalid_argument("poly step order must be in [1, 12]");
}

double AdmissibleProfile::value(double x) const {
    double a = std::fabs(x);
    if (a <= 1.0 / 3.0) return 1.0;
    if (a >= 2.0 / 3.0) return 0.0;
    return 1.0 - smooth_step(3.0 * a - 1.0, spec_);
}

double AdmissibleProfile::tilde(double x) const { return value(0.5 * x) - value(x); }

double AdmissibleProfile::derivative(double x, int r) const {
    if (r == 0) return value(x);
    if (!spec_.infinitely_smooth() && r > spec_.order)
        throw std::invalid_argument("derivative order exceeds profile smoothness");
    double a = std::fabs(x);
    if (a <= 1.0 / 3.0 || a >= 2.0 / 3.0) return 0.0;
    double d = -smooth_step_derivative(3.0 * a - 1.0, r, spec_);
    for (int i = 0; i < r; ++i) d *= 3.0;
    // g is even: odd derivatives flip sign on the negative side
    if (x < 0.0 && r % 2 == 1) d = -d;
    return d;
}

} // namespace trigshear
