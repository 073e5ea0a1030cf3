#include "twocross/codim2.hpp"

#include <algorithm>
#include <cmath>

namespace twocross {

std::string to_string(EquilibriumType t) {
    switch (t) {
        case EquilibriumType::saddle: return "saddle";
        case EquilibriumType::stable_node: return "stable_node";
        case EquilibriumType::unstable_node: return "unstable_node";
        case EquilibriumType::stable_focus: return "stable_focus";
        case EquilibriumType::unstable_focus: return "unstable_focus";
        case EquilibriumType::center_boundary: return "center_boundary";
        case EquilibriumType::degenerate: return "degenerate";
    }
    return "?";
}

std::string to_string(Stability s) {
    switch (s) {
        case Stability::attracting: return "attracting";
        case Stability::repelling: return "repelling";
        case Stability::saddle: return "saddle";
        case Stability::undecided: return "undecided";
    }
    return "?";
}

std::string SlidingVerdict::tag_label(Tag t) {
    switch (t) {
        case SLIDING: return "SLIDING";
        case NO_EQUILIBRIUM: return "NO_EQUILIBRIUM";
        case UNDETERMINED: return "UNDETERMINED";
    }
    return "?";
}

namespace {

constexpr double kBoxTol = 1e-9;

Vec2 slow_xy(const PiecewiseField& pw, const Vec2& q, double x3, double K, ArgMode mode) {
    Vec3 v = blowup_slow_eval(pw, TransitionFunction{}, K, {q.x, q.y, x3}, mode,
                              WeightScaling::unnormalized);
    return {v.x1, v.x2};
}

Mat2 fd_jacobian(const PiecewiseField& pw, const Vec2& q, double x3, double K,
                 ArgMode mode, WeightScaling scaling) {
    double hx = 1e-6 * (1.0 + std::abs(q.x));
    double hy = 1e-6 * (1.0 + std::abs(q.y));
    auto f = [&](double x, double y) {
        Vec3 v = blowup_slow_eval(pw, TransitionFunction{}, K, {x, y, x3}, mode, scaling);
        return Vec2{v.x1, v.x2};
    };
    Vec2 fx1 = f(q.x + hx, q.y), fx0 = f(q.x - hx, q.y);
    Vec2 fy1 = f(q.x, q.y + hy), fy0 = f(q.x, q.y - hy);
    return {(fx1.x - fx0.x) / (2 * hx), (fy1.x - fy0.x) / (2 * hy),
            (fx1.y - fx0.y) / (2 * hx), (fy1.y - fy0.y) / (2 * hy)};
}

void sort_points(std::vector<Vec2>& pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
}

}  // namespace

std::vector<Vec2> slow_manifold_equilibria(const PiecewiseField& pw, double x3, double K,
                                           ArgMode mode) {
    std::vector<Vec2> roots;
    if (pw.all_constant()) {
        BilinearSystem b = reduced_bilinear_system(pw, Regime::fixed_ratio(1.0));
        for (const Vec2& r : bilinear_equilibria(b.eqx, b.eqy))
            if (std::abs(r.x) <= 1.0 + 1e-12 && std::abs(r.y) <= 1.0 + 1e-12)
                roots.push_back(r);
        sort_points(roots);
        return roots;
    }

    // damped Newton from a 9x9 seed grid on [-1,1]^2
    for (int i = 0; i < 9; ++i) {
        for (int j = 0; j < 9; ++j) {
            Vec2 q{-1.0 + 0.25 * i, -1.0 + 0.25 * j};
            Vec2 F = slow_xy(pw, q, x3, K, mode);
            bool ok = false;
            for (int it = 0; it < 60; ++it) {
                double fn = std::max(std::abs(F.x), std::abs(F.y));
                if (fn < 1e-12) { ok = true; break; }
                Mat2 J = fd_jacobian(pw, q, x3, K, mode, WeightScaling::unnormalized);
                double det = J.det();
                if (std::abs(det) < 1e-14 * (1.0 + std::abs(J.a11) + std::abs(J.a22))) break;
                Vec2 step{(-F.x * J.a22 + F.y * J.a12) / det,
                          (-F.y * J.a11 + F.x * J.a21) / det};
                double lam = 1.0;
                bool improved = false;
                for (int h = 0; h < 30; ++h) {
                    Vec2 qn{std::clamp(q.x + lam * step.x, -1.25, 1.25),
                            std::clamp(q.y + lam * step.y, -1.25, 1.25)};
                    Vec2 Fn = slow_xy(pw, qn, x3, K, mode);
                    if (std::max(std::abs(Fn.x), std::abs(Fn.y)) < fn) {
                        q = qn;
                        F = Fn;
                        improved = true;
                        break;
                    }
                    lam *= 0.5;
                }
                if (!improved) break;
            }
            if (!ok) {
                Vec2 F2 = slow_xy(pw, q, x3, K, mode);
                ok = std::max(std::abs(F2.x), std::abs(F2.y)) < 1e-10;
            }
            if (!ok) continue;
            if (std::abs(q.x) > 1.0 + 1e-12 || std::abs(q.y) > 1.0 + 1e-12) continue;
            bool dup = false;
            for (const Vec2& r : roots)
                if (std::hypot(r.x - q.x, r.y - q.y) < 1e-7) dup = true;
            if (!dup) roots.push_back(q);
        }
    }
    sort_points(roots);
    return roots;
}

Mat2 slow_jacobian(const PiecewiseField& pw, const Vec2& point, double x3, double K,
                   ArgMode mode, WeightScaling scaling) {
    if (pw.all_constant()) {
        BilinearSystem b = reduced_bilinear_system(pw, Regime::fixed_ratio(1.0));
        double f = (scaling == WeightScaling::convex) ? 0.25 : 1.0;
        return {f * b.eqx.dx(point.x, point.y), f * b.eqx.dy(point.x, point.y),
                f * b.eqy.dx(point.x, point.y) / K, f * b.eqy.dy(point.x, point.y) / K};
    }
    return fd_jacobian(pw, point, x3, K, mode, scaling);
}

std::vector<IndicatorEntry> sliding_indicator(const PiecewiseField& pw, double x3,
                                              double K, ArgMode mode) {
    std::vector<IndicatorEntry> out;
    for (const Vec2& q : slow_manifold_equilibria(pw, x3, K, mode)) {
        Mat2 J = slow_jacobian(pw, q, x3, K, mode, WeightScaling::unnormalized);
        out.push_back({q, J, J.trace() * J.det()});
    }
    return out;
}

EquilibriumType classify_equilibrium(const Mat2& J, double tol) {
    double tr = J.trace();
    double det = J.det();
    if (std::abs(det) <= tol) return EquilibriumType::degenerate;
    if (det < -tol) return EquilibriumType::saddle;
    if (std::abs(tr) <= tol) return EquilibriumType::center_boundary;
    bool node = J.discriminant() >= 0.0;
    if (tr < 0) return node ? EquilibriumType::stable_node : EquilibriumType::stable_focus;
    return node ? EquilibriumType::unstable_node : EquilibriumType::unstable_focus;
}

namespace {

Mat2 ratio_jacobian(const BilinearSystem& b, const Vec2& P, double ratio) {
    return {b.eqx.dx(P.x, P.y), b.eqx.dy(P.x, P.y), ratio * b.eqy.dx(P.x, P.y),
            ratio * b.eqy.dy(P.x, P.y)};
}

Stability sign_pattern(const Mat2& J) {
    double scale = 1.0 + std::abs(J.a11) + std::abs(J.a12) + std::abs(J.a21) + std::abs(J.a22);
    double tol = 1e-9 * scale;
    double det = J.det();
    double tr = J.trace();
    if (det < -tol) return Stability::saddle;
    if (det > tol && tr < -tol) return Stability::attracting;
    if (det > tol && tr > tol) return Stability::repelling;
    return Stability::undecided;
}

}  // namespace

Stability ratio_regime_stability(const BilinearSystem& b, const Vec2& P, Regime regime) {
    if (regime.kind == Regime::fixed) return sign_pattern(ratio_jacobian(b, P, regime.k));
    const double ladder_zero[3] = {1e-2, 1e-4, 1e-6};
    const double ladder_inf[3] = {1e2, 1e4, 1e6};
    const double* ladder = (regime.kind == Regime::to_zero) ? ladder_zero : ladder_inf;
    Stability s0 = sign_pattern(ratio_jacobian(b, P, ladder[0]));
    for (int i = 1; i < 3; ++i)
        if (sign_pattern(ratio_jacobian(b, P, ladder[i])) != s0) return Stability::undecided;
    return s0;
}

SlidingVerdict sliding_verdict(const PiecewiseField& pw, Regime regime) {
    if (!pw.all_constant())
        throw std::invalid_argument("sliding_verdict: constant quadrant fields required");
    for (SignPair s : SignPair::all()) {
        Vec3 v = pw.eval(s, {0, 0, 0});
        if (std::abs(v.x3) <= 1e-9 * (1.0 + v.norm()))
            throw std::invalid_argument(
                "sliding_verdict: third components must be nonzero (transversal drift)");
    }

    SlidingVerdict verdict;
    verdict.regime = regime;
    BilinearSystem b = reduced_bilinear_system(pw, regime);
    std::vector<Vec2> roots = bilinear_equilibria(b.eqx, b.eqy);
    sort_points(roots);

    double r_rep = (regime.kind == Regime::fixed) ? regime.k : 1.0;
    int inside = 0;
    bool on_boundary = false;
    std::vector<Vec2> inside_pts;
    for (const Vec2& q : roots) {
        double m = std::max(std::abs(q.x), std::abs(q.y));
        EquilibriumReport rep;
        rep.location = q;
        rep.jacobian = ratio_jacobian(b, q, r_rep);
        rep.trace = rep.jacobian.trace();
        rep.det = rep.jacobian.det();
        rep.type = classify_equilibrium(rep.jacobian);
        rep.in_unit_square = m < 1.0 - kBoxTol;
        rep.regime_stability = ratio_regime_stability(b, q, regime);
        verdict.certificate.push_back(rep);
        verdict.indicator_values.push_back(rep.trace * rep.det);
        if (rep.in_unit_square) {
            ++inside;
            inside_pts.push_back(q);
        } else if (m <= 1.0 + kBoxTol) {
            on_boundary = true;
        }
    }

    if (on_boundary) {
        verdict.tag = SlidingVerdict::UNDETERMINED;
        verdict.method = "equilibrium_certificate";
        verdict.note = "equilibrium on the unit-square boundary";
        return verdict;
    }
    if (inside >= 2) {
        verdict.tag = SlidingVerdict::SLIDING;
        verdict.method = "equilibrium_certificate:two(persistent saddle)";
        return verdict;
    }
    if (inside == 1) {
        Stability st = ratio_regime_stability(b, inside_pts[0], regime);
        if (st == Stability::attracting || st == Stability::repelling ||
            st == Stability::saddle) {
            verdict.tag = SlidingVerdict::SLIDING;
            verdict.method = "equilibrium_certificate:one_hyperbolic(" + to_string(st) + ")";
            return verdict;
        }
        verdict.tag = SlidingVerdict::UNDETERMINED;
        verdict.method = "equilibrium_certificate";
        verdict.note = "single equilibrium not hyperbolic under the regime";
        return verdict;
    }
    verdict.tag = SlidingVerdict::NO_EQUILIBRIUM;
    verdict.method = "equilibrium_certificate";
    verdict.note = "no sliding certified (sufficient conditions fail)";
    return verdict;
}

ConstantApproximation constant_approximation(const PiecewiseField& pw, const Vec3& p0,
                                             double tol) {
    std::array<Vec3, 4> vals;
    bool valid = true;
    for (SignPair s : SignPair::all()) {
        Vec3 v = pw.eval(s, p0);
        vals[s.index()] = v;
        // transversality of both switching components plus the drift
        if (std::abs(v.x1) <= tol || std::abs(v.x2) <= tol || std::abs(v.x3) <= tol)
            valid = false;
    }
    return {PiecewiseField::from_constants(vals), valid};
}

}  // namespace twocross
