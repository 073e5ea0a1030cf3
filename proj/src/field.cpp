#include "twocross/field.hpp"

namespace twocross {

const std::array<SignPair, 4>& SignPair::all() {
    static const std::array<SignPair, 4> k = {
        SignPair{+1, +1}, SignPair{+1, -1}, SignPair{-1, +1}, SignPair{-1, -1}};
    return k;
}

std::string SignPair::label() const {
    std::string out;
    out += (s1 > 0 ? '+' : '-');
    out += (s2 > 0 ? '+' : '-');
    return out;
}

std::string Stratum::label() const {
    auto ch = [](int s) { return s > 0 ? '+' : (s < 0 ? '-' : '0'); };
    std::string out = codim() == 0 ? "M" : "S";
    out += ch(sig1);
    out += ch(sig2);
    return out;
}

Stratum stratum_of(const Vec3& p, double tol) {
    auto sig = [tol](double v) { return std::abs(v) <= tol ? 0 : (v > 0 ? +1 : -1); };
    return Stratum{sig(p.x1), sig(p.x2)};
}

double TransitionFunction::operator()(double t) const {
    if (t <= -1.0) return -1.0;
    if (t >= 1.0) return 1.0;
    switch (kind) {
        case clamped_identity: return t;
        case clamped_cubic: return (3.0 * t - t * t * t) / 2.0;
    }
    return t;
}

double TransitionFunction::deriv(double t) const {
    if (t <= -1.0 || t >= 1.0) return 0.0;
    switch (kind) {
        case clamped_identity: return 1.0;
        case clamped_cubic: return (3.0 - 3.0 * t * t) / 2.0;
    }
    return 1.0;
}

double convex_weight(SignPair s, double u, double v) {
    return (1.0 + s.s1 * u) * (1.0 + s.s2 * v) / 4.0;
}

Vec3 SmoothField3::eval(const Vec3& p) const {
    return {comp1.eval(p.x1, p.x2, p.x3), comp2.eval(p.x1, p.x2, p.x3),
            comp3.eval(p.x1, p.x2, p.x3)};
}

bool SmoothField3::is_constant() const {
    return comp1.is_constant() && comp2.is_constant() && comp3.is_constant();
}

bool PiecewiseField::all_constant() const {
    for (const auto& f : fields_)
        if (!f.is_constant()) return false;
    return true;
}

PiecewiseField PiecewiseField::from_constants(const std::array<Vec3, 4>& by_index) {
    PiecewiseField pw;
    for (SignPair s : SignPair::all()) {
        const Vec3& v = by_index[s.index()];
        pw.field(s) = SmoothField3{make_constant(v.x1), make_constant(v.x2),
                                   make_constant(v.x3)};
    }
    return pw;
}

}  // namespace twocross
