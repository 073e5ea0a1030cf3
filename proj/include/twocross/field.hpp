#pragma once

#include <array>
#include <string>

#include "twocross/expression.hpp"
#include "twocross/vec.hpp"

namespace twocross {

/// Quadrant index s = (s1, s2), si in {-1, +1}.
struct SignPair {
    int s1 = +1;
    int s2 = +1;

    int index() const { return (s1 > 0 ? 0 : 2) + (s2 > 0 ? 0 : 1); }
    static const std::array<SignPair, 4>& all();
    std::string label() const;  // "++", "+-", "-+", "--"
};

/// Sign vector of (x1, x2) with a tolerance-based zero; codimension is the
/// number of zero entries. (0,0) is the codimension-2 axis.
struct Stratum {
    int sig1 = 0;
    int sig2 = 0;

    int codim() const { return (sig1 == 0 ? 1 : 0) + (sig2 == 0 ? 1 : 0); }
    bool operator==(const Stratum& o) const { return sig1 == o.sig1 && sig2 == o.sig2; }
    std::string label() const;  // "M++", "S0-", "S00", ...
};

Stratum stratum_of(const Vec3& p, double tol);

/// Monotone saturation profile: -1 for t <= -1, +1 for t >= 1.
struct TransitionFunction {
    enum Kind { clamped_identity, clamped_cubic } kind = clamped_identity;

    double operator()(double t) const;
    double deriv(double t) const;
};

/// (1 + s1*u)(1 + s2*v)/4; the four weights sum to 1 for any (u, v).
double convex_weight(SignPair s, double u, double v);

struct SmoothField3 {
    Expression comp1, comp2, comp3;

    Vec3 eval(const Vec3& p) const;
    bool is_constant() const;
};

/// The four quadrant fields of a 2-cross piecewise-smooth vector field.
class PiecewiseField {
public:
    PiecewiseField() = default;

    SmoothField3& field(SignPair s) { return fields_[s.index()]; }
    const SmoothField3& field(SignPair s) const { return fields_[s.index()]; }

    Vec3 eval(SignPair s, const Vec3& p) const { return field(s).eval(p); }
    bool all_constant() const;

    static PiecewiseField from_constants(const std::array<Vec3, 4>& by_index);

private:
    std::array<SmoothField3, 4> fields_;
};

}  // namespace twocross
