#pragma once

#include <string>

#include "trigshear/vec2.hpp"

namespace trigshear {

// Frequency cone tag. Horizontal windows put the fine scale on the first
// coordinate, vertical windows on the second.
enum class Cone { Horizontal, Vertical };

char cone_char(Cone c);
Cone parse_cone(char c);

// Generator of the monotone transition h with h(x)=0 for x<=0 and h(x)=1 for
// x>=1, used to assemble the admissible window g.
//
//  - Exp:  h = s(x)/(s(x)+s(1-x)) with s(x)=exp(-1/x); C^inf.
//  - Poly: the degree-(2q+1) polynomial step with q vanishing derivatives at
//          both ends; C^q, exact derivatives of every order.
//
// Both satisfy h(x) + h(1-x) = 1, which makes the integer shifts of g a
// partition of unity.
struct StepSpec {
    enum class Kind { Exp, Poly };
    Kind kind = Kind::Exp;
    int order = 0; // smoothness q for Poly, ignored for Exp

    static StepSpec exponential() { return {Kind::Exp, 0}; }
    static StepSpec polynomial(int q) { return {Kind::Poly, q}; }

    // parse "exp" or "poly:q"
    static StepSpec parse(const std::string& name);
    std::string name() const;

    bool infinitely_smooth() const { return kind == Kind::Exp; }
};

double smooth_step(double x, const StepSpec& spec);
// r-th derivative of the step; r = 0 gives the value
double smooth_step_derivative(double x, int r, const StepSpec& spec);

// The 1-D admissible window g: even, nonnegative, supp g = (-2/3, 2/3),
// g = 1 on [-1/3, 1/3], strictly decreasing on (1/3, 2/3), and
// sum_z g(x+z) = 1 for all x. Built as g(x) = 1 - h(3|x| - 1).
class AdmissibleProfile {
  public:
    explicit AdmissibleProfile(StepSpec spec = StepSpec::exponential());

    double value(double x) const;
    // g~(x) = g(x/2) - g(x); vanishes for |x| <= 1/3 and |x| >= 4/3
    double tilde(double x) const;
    // r-th derivative of g; throws std::invalid_argument when r exceeds the
    // generator smoothness
    double derivative(double x, int r) const;

    const StepSpec& step() const { return spec_; }
    // smoothness order q; -1 means C^inf
    int smoothness() const { return spec_.infinitely_smooth() ? -1 : spec_.order; }

  private:
    StepSpec spec_;
};

// 2-D product window: horizontal Psi(x) = g~(x1) g(x2), vertical swapped.
class WindowFunction {
  public:
    WindowFunction(Cone cone, AdmissibleProfile profile)
        : cone_(cone), profile_(std::move(profile)) {}

    double eval(Vec2 x) const {
        if (cone_ == Cone::Horizontal) return profile_.tilde(x.x1) * profile_.value(x.x2);
        return profile_.value(x.x1) * profile_.tilde(x.x2);
    }

    Cone cone() const { return cone_; }
    const AdmissibleProfile& profile() const { return profile_; }

  private:
    Cone cone_;
    AdmissibleProfile profile_;
};

} // namespace trigshear
