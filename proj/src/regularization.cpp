#include "twocross/regularization.hpp"

#include <algorithm>
#include <cmath>

namespace twocross {

std::string Regime::label() const {
    switch (kind) {
        case fixed: {
            char buf[48];
            std::snprintf(buf, sizeof buf, "fixed k=%.17g", k);
            return buf;
        }
        case to_zero: return "to-zero";
        case to_infinity: return "to-inf";
    }
    return "?";
}

Vec3 regularized_eval(const PiecewiseField& pw, const TransitionFunction& phi, double eps,
                      double eta, const Vec3& p) {
    double u = phi(p.x1 / eps);
    double v = phi(p.x2 / eta);
    Vec3 out{0, 0, 0};
    for (SignPair s : SignPair::all()) {
        double w = convex_weight(s, u, v);
        if (w != 0.0) out = out + pw.eval(s, p) * w;
    }
    return out;
}

Vec3 blowup_slow_eval(const PiecewiseField& pw, const TransitionFunction& phi, double K,
                      const Vec3& q, ArgMode mode, WeightScaling scaling) {
    double u = phi(q.x1);
    double v = phi(q.x2);
    Vec3 arg = (mode == ArgMode::strict) ? Vec3{0.0, 0.0, q.x3} : Vec3{q.x1, q.x2, q.x3};
    double X1 = 0, X2 = 0, X3 = 0;
    for (SignPair s : SignPair::all()) {
        double w = (1.0 + s.s1 * u) * (1.0 + s.s2 * v);
        if (w == 0.0) continue;
        Vec3 f = pw.eval(s, arg);
        X1 += w * f.x1;
        X2 += w * f.x2;
        X3 += w * f.x3;
    }
    if (scaling == WeightScaling::convex) {
        X1 /= 4.0;
        X2 /= 4.0;
    }
    return {X1, X2 / K, X3 / 4.0};
}

BilinearSystem reduced_bilinear_system(const PiecewiseField& pw, Regime regime) {
    if (!pw.all_constant())
        throw std::invalid_argument(
            "reduced_bilinear_system: quadrant fields must be constant (freeze them first)");
    auto sums = [&pw](int comp) {
        BilinearEq e;
        for (SignPair s : SignPair::all()) {
            Vec3 v = pw.eval(s, {0, 0, 0});
            double a = comp == 0 ? v.x1 : v.x2;
            e.c00 += a;
            e.c10 += s.s1 * a;
            e.c01 += s.s2 * a;
            e.c11 += s.s1 * s.s2 * a;
        }
        return e;
    };
    return {sums(0), sums(1), regime};
}

FactoredBilinear factor_bilinear(const BilinearSystem& b) {
    double scale = 1.0;
    for (double c : {b.eqx.c00, b.eqx.c10, b.eqx.c01, b.eqx.c11, b.eqy.c00, b.eqy.c10,
                     b.eqy.c01, b.eqy.c11})
        scale = std::max(scale, std::abs(c));
    double l1 = b.eqx.c11 / 4.0;
    double l2 = b.eqy.c11 / 4.0;
    if (std::abs(l1) <= 1e-12 * scale || std::abs(l2) <= 1e-12 * scale)
        throw DegenerateLambda("factor_bilinear: vanishing xy coefficient; the reduced system is not genuinely quadratic");
    FactoredBilinear f;
    f.lambda1 = l1;
    f.alpha1 = -b.eqx.c01 / b.eqx.c11;
    f.beta1 = -b.eqx.c10 / b.eqx.c11;
    f.delta1 = l1 * f.alpha1 * f.beta1 - b.eqx.c00 / 4.0;
    f.lambda2 = l2;
    f.alpha2 = -b.eqy.c01 / b.eqy.c11;
    f.beta2 = -b.eqy.c10 / b.eqy.c11;
    f.delta2 = l2 * f.alpha2 * f.beta2 - b.eqy.c00 / 4.0;
    return f;
}

BilinearSystem reconstruct_bilinear(const FactoredBilinear& f, Regime regime) {
    auto expand = [](double l, double a, double b, double d) {
        BilinearEq e;
        e.c11 = 4.0 * l;
        e.c10 = -4.0 * l * b;
        e.c01 = -4.0 * l * a;
        e.c00 = 4.0 * (l * a * b - d);
        return e;
    };
    return {expand(f.lambda1, f.alpha1, f.beta1, f.delta1),
            expand(f.lambda2, f.alpha2, f.beta2, f.delta2), regime};
}

UnitProductForm normalize_factored(const FactoredBilinear& f) {
    UnitProductForm u;
    u.delta1 = f.delta1 / f.lambda1;
    u.C = f.lambda2 / f.lambda1;
    u.alpha2 = f.alpha2 - f.alpha1;
    u.beta2 = f.beta2 - f.beta1;
    u.delta2 = f.delta2 / f.lambda1;
    u.shift_x = f.alpha1;
    u.shift_y = f.beta1;
    u.time_scale = 1.0 / f.lambda1;
    return u;
}

namespace {

double coeff_scale(const BilinearEq& e) {
    return std::max({1.0, std::abs(e.c00), std::abs(e.c10), std::abs(e.c01), std::abs(e.c11)});
}

bool residual_ok(const BilinearEq& ex, const BilinearEq& ey, double x, double y) {
    double size = (1.0 + std::abs(x)) * (1.0 + std::abs(y));
    return std::abs(ex.eval(x, y)) <= 1e-8 * coeff_scale(ex) * size &&
           std::abs(ey.eval(x, y)) <= 1e-8 * coeff_scale(ey) * size;
}

}  // namespace

std::vector<Vec2> bilinear_equilibria(const BilinearEq& ex, const BilinearEq& ey) {
    // Resultant in x of ex and ey after eliminating y.
    double A = ey.c10 * ex.c11 - ey.c11 * ex.c10;
    double B = ey.c00 * ex.c11 + ey.c10 * ex.c01 - ey.c01 * ex.c10 - ey.c11 * ex.c00;
    double C = ey.c00 * ex.c01 - ey.c01 * ex.c00;

    double scale = std::max({std::abs(A), std::abs(B), std::abs(C)});
    std::vector<double> xs;
    if (scale == 0.0) return {};  // zero sets share a component or are disjoint lines
    const double tiny = 1e-13 * scale;
    if (std::abs(A) <= tiny) {
        if (std::abs(B) > tiny) xs.push_back(-C / B);
    } else {
        double disc = B * B - 4.0 * A * C;
        double disc_scale = std::max(B * B, std::abs(4.0 * A * C));
        if (std::abs(disc) <= 1e-12 * disc_scale) {
            xs.push_back(-B / (2.0 * A));  // double root
        } else if (disc > 0.0) {
            double r = std::sqrt(disc);
            double q = -0.5 * (B + (B >= 0 ? r : -r));
            xs.push_back(q / A);
            if (q != 0.0) xs.push_back(C / q);
        }
    }

    std::vector<Vec2> roots;
    for (double x : xs) {
        double denx = ex.c01 + ex.c11 * x;
        double deny = ey.c01 + ey.c11 * x;
        double y;
        double dscale = coeff_scale(ex) * (1.0 + std::abs(x));
        if (std::abs(denx) > 1e-12 * dscale) {
            y = -(ex.c00 + ex.c10 * x) / denx;
        } else if (std::abs(deny) > 1e-12 * coeff_scale(ey) * (1.0 + std::abs(x))) {
            // ex does not determine y at this x; it must vanish identically there
            if (std::abs(ex.c00 + ex.c10 * x) > 1e-10 * dscale) continue;
            y = -(ey.c00 + ey.c10 * x) / deny;
        } else {
            continue;  // neither equation pins y: not an isolated root
        }
        if (!std::isfinite(y) || !residual_ok(ex, ey, x, y)) continue;
        bool dup = false;
        for (const Vec2& r : roots)
            if (std::hypot(r.x - x, r.y - y) < 1e-7) dup = true;
        if (!dup) roots.push_back({x, y});
    }
    return roots;
}

}  // namespace twocross
