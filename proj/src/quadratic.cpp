#include "twocross/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "twocross/detail/rk45.hpp"

namespace twocross {

std::string to_string(CaseTag t) {
    switch (t) {
        case CaseTag::I: return "I";
        case CaseTag::II: return "II";
        case CaseTag::III: return "III";
        case CaseTag::IV: return "IV";
        case CaseTag::V: return "V";
        case CaseTag::VI: return "VI";
    }
    return "?";
}

namespace {

bool close(double p, double q, double tol) {
    return std::abs(p - q) <= tol * (1.0 + std::abs(p) + std::abs(q));
}

bool nonzero(double v, double tol) { return std::abs(v) > tol * (1.0 + std::abs(v)); }

}  // namespace

CaseTag affine_classify(const QuadSystem& q, double tol) {
    bool ac = close(q.a, q.c, tol);
    bool bd = close(q.b, q.d, tol);
    if (!ac && !bd) return CaseTag::I;
    if (!ac) return CaseTag::II;
    if (!bd) return CaseTag::III;
    if (nonzero(q.B, tol)) return CaseTag::IV;
    if (nonzero(q.D, tol)) return CaseTag::V;
    return CaseTag::VI;
}

AffineNormalization affine_normalize(const QuadSystem& q, double tol) {
    if (!nonzero(q.A, tol) || !nonzero(q.C, tol))
        throw std::invalid_argument("affine_normalize: A and C must be nonzero");
    AffineNormalization n;
    n.tag = affine_classify(q, tol);
    AffineMap& m = n.map;
    switch (n.tag) {
        case CaseTag::I: {
            m.v = q.a;
            m.r = q.b;
            m.u = q.c - q.a;
            m.w = q.d - q.b;
            if (m.u == 0.0 || m.w == 0.0)
                throw std::invalid_argument("affine_normalize: degenerate case-I pattern");
            m.sigma = 1.0 / (m.w * q.A);
            n.Bn = q.B / (m.u * m.w * q.A);
            n.Cn = m.u * q.C / (m.w * q.A);
            n.Dn = q.D / (q.A * m.w * m.w);
            n.normalized = {1, n.Bn, n.Cn, n.Dn, 0, 0, 1, 1};
            break;
        }
        case CaseTag::II: {
            m.v = q.a;
            m.r = q.b;
            m.u = q.c - q.a;
            m.w = q.C * m.u / q.A;
            m.sigma = 1.0 / (q.C * m.u);
            n.Bn = q.B / (q.C * m.u * m.u);
            n.Cn = 1.0;
            n.Dn = q.D * q.A / (q.C * q.C * m.u * m.u);
            n.normalized = {1, n.Bn, 1, n.Dn, 0, 0, 1, 0};
            break;
        }
        case CaseTag::III: {
            m.v = q.a;
            m.r = q.b;
            m.w = q.d - q.b;
            m.u = q.A * m.w / q.C;
            m.sigma = 1.0 / (q.A * m.w);
            n.Bn = q.B * q.C / (q.A * q.A * m.w * m.w);
            n.Cn = 1.0;
            n.Dn = q.D / (q.A * m.w * m.w);
            n.normalized = {1, n.Bn, 1, n.Dn, 0, 0, 0, 1};
            break;
        }
        case CaseTag::IV: {
            m.v = q.a;
            m.r = q.b;
            double val = q.B / q.C;
            m.u = std::sqrt(std::abs(val));
            m.w = q.C * m.u / q.A;
            m.sigma = 1.0 / (q.C * m.u);
            n.Bn = (val > 0) ? 1.0 : -1.0;
            n.Cn = 1.0;
            n.Dn = m.sigma * q.D / m.w;
            n.normalized = {1, n.Bn, 1, n.Dn, 0, 0, 0, 0};
            if (val < 0) n.note = "constant normalized to -1 (B/C < 0)";
            break;
        }
        case CaseTag::V: {
            m.v = q.a;
            m.r = q.b;
            m.w = std::sqrt(std::abs(q.D / q.A));
            m.u = m.w;
            m.sigma = 1.0 / (q.A * m.w);
            n.Bn = 0.0;
            n.Cn = q.C / q.A;
            n.Dn = (q.A * q.D > 0) ? 1.0 : -1.0;
            n.normalized = {1, 0, n.Cn, n.Dn, 0, 0, 0, 0};
            if (q.A * q.D < 0) n.note = "constant normalized to +1 (D/A < 0)";
            break;
        }
        case CaseTag::VI: {
            m.v = q.a;
            m.r = q.b;
            m.u = 1.0;
            m.w = 1.0;
            m.sigma = 1.0 / q.A;
            n.Bn = 0.0;
            n.Cn = q.C / q.A;
            n.Dn = 0.0;
            n.normalized = {1, 0, n.Cn, 0, 0, 0, 0, 0};
            break;
        }
    }
    return n;
}

QuadEquilibria equilibria_quadratic(const QuadSystem& q) {
    QuadEquilibria out;
    double scale = std::max({1.0, std::abs(q.A), std::abs(q.B), std::abs(q.C), std::abs(q.D)});
    bool b_zero = std::abs(q.B) <= 1e-12 * scale;
    bool d_zero = std::abs(q.D) <= 1e-12 * scale;
    if (b_zero && d_zero) {
        // both quadratics factor into coordinate lines through (a,b) and (c,d)
        if (close(q.b, q.d, 1e-12)) {
            out.family = LineFamily{LineFamily::horizontal, q.b};
        } else if (close(q.a, q.c, 1e-12)) {
            out.family = LineFamily{LineFamily::vertical, q.a};
        }
        auto consider = [&](Vec2 p) {
            if (out.family) {
                if (out.family->axis == LineFamily::horizontal &&
                    close(p.y, out.family->level, 1e-12))
                    return;
                if (out.family->axis == LineFamily::vertical &&
                    close(p.x, out.family->level, 1e-12))
                    return;
            }
            Vec2 f = q.rhs(p);
            if (std::abs(f.x) > 1e-10 * scale || std::abs(f.y) > 1e-10 * scale) return;
            for (const Vec2& r : out.points)
                if (std::hypot(r.x - p.x, r.y - p.y) < 1e-10) return;
            out.points.push_back(p);
        };
        consider({q.a, q.d});
        consider({q.c, q.b});
        return out;
    }
    BilinearEq ex{q.A * q.a * q.b - q.B, -q.A * q.b, -q.A * q.a, q.A};
    BilinearEq ey{q.C * q.c * q.d - q.D, -q.C * q.d, -q.C * q.c, q.C};
    out.points = bilinear_equilibria(ex, ey);
    std::sort(out.points.begin(), out.points.end(),
              [](const Vec2& p, const Vec2& r) { return p.x != r.x ? p.x < r.x : p.y < r.y; });
    return out;
}

bool center_check(CaseTag tag, double B, double D, double tol) {
    if (tag == CaseTag::II) {
        if (!(D < 0)) return false;
        return std::abs(B - (D - std::sqrt(-D))) <= tol;
    }
    if (tag == CaseTag::III) {
        if (!(B < 0)) return false;
        return std::abs(D - (B - std::sqrt(-B))) <= tol;
    }
    throw std::invalid_argument("center_check: case must be II or III");
}

namespace {

/// Quadratic polynomial in (x, y): p00 + p10 x + p01 y + p20 x^2 + p11 xy + p02 y^2.
struct Quad2 {
    double p00 = 0, p10 = 0, p01 = 0, p20 = 0, p11 = 0, p02 = 0;

    Quad2 shifted(double sx, double sy) const {
        // substitute x -> x + sx, y -> y + sy
        Quad2 r;
        r.p20 = p20;
        r.p11 = p11;
        r.p02 = p02;
        r.p10 = p10 + 2 * p20 * sx + p11 * sy;
        r.p01 = p01 + 2 * p02 * sy + p11 * sx;
        r.p00 = p00 + p10 * sx + p01 * sy + p20 * sx * sx + p11 * sx * sy + p02 * sy * sy;
        return r;
    }
    Quad2 scaled(double s) const {
        return {s * p00, s * p10, s * p01, s * p20, s * p11, s * p02};
    }
    /// substitute x -> t11 X + t12 Y, y -> t21 X + t22 Y
    Quad2 linear(double t11, double t12, double t21, double t22) const {
        Quad2 r;
        r.p00 = p00;
        r.p10 = p10 * t11 + p01 * t21;
        r.p01 = p10 * t12 + p01 * t22;
        r.p20 = p20 * t11 * t11 + p11 * t11 * t21 + p02 * t21 * t21;
        r.p02 = p20 * t12 * t12 + p11 * t12 * t22 + p02 * t22 * t22;
        r.p11 = 2 * p20 * t11 * t12 + p11 * (t11 * t22 + t12 * t21) + 2 * p02 * t21 * t22;
        return r;
    }
    Quad2 plus(const Quad2& o, double f) const {
        return {p00 + f * o.p00, p10 + f * o.p10, p01 + f * o.p01,
                p20 + f * o.p20, p11 + f * o.p11, p02 + f * o.p02};
    }
};

}  // namespace

BTCoefficients bt_normal_form(double C, double B1, double D1) {
    for (double bad : {-1.0, 0.0, 1.0})
        if (std::abs(C - bad) < 1e-12)
            throw std::domain_error("bt_normal_form: C must avoid {-1, 0, 1}");

    double op = 1.0 + C;
    double B = B1 + C * C / (op * op);
    double D = D1 + C / (op * op);

    // x' = xy - B, y' = C(x-1)(y-1) - D
    Quad2 F1{-B, 0, 0, 0, 1, 0};
    Quad2 F2{C - D, -C, -C, 0, C, 0};

    // move the degenerate equilibrium to the origin, rescale time by (1+C)/C
    double k = C / op;
    F1 = F1.shifted(k, k).scaled(op / C);
    F2 = F2.shifted(k, k).scaled(op / C);

    // Jordan basis: old = T * new with T = [[1, 1/(1+C)], [-1, C/(1+C)]], det T = 1
    double t11 = 1, t12 = 1.0 / op, t21 = -1, t22 = C / op;
    Quad2 G1 = F1.linear(t11, t12, t21, t22);
    Quad2 G2 = F2.linear(t11, t12, t21, t22);
    // rows combined by T^{-1} = [[C/(1+C), -1/(1+C)], [1, 1]]
    Quad2 H1 = G1.scaled(C / op).plus(G2, -1.0 / op);
    Quad2 H2 = G1.plus(G2, 1.0);

    // unfolding shifts
    double a1 = -(C * C * C + 2 * C * C + C) / (C * C);
    double a2 = (B1 * C * C * C - C * C * D1 - B1 * C + D1) / (C * C);
    double sx = -a2 / (2 * a1);
    double sy = (B1 * C - D1) / C;
    H1 = H1.shifted(sx, sy);
    H2 = H2.shifted(sx, sy);

    return {H2.p00, H2.p01, H2.p20, H2.p11};
}

std::string bt_family::to_string(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::S: return "S";
        case Region::II: return "II";
        case Region::H: return "H";
        case Region::III: return "III";
        case Region::C_approx: return "C_approx";
        case Region::IV: return "IV";
        case Region::BT_origin: return "BT_origin";
    }
    return "?";
}

PiecewiseField bt_family::fields(double alpha, double beta) {
    double fa = 5.0 / 36 - alpha / 4;
    double fb = -13.0 / 36 - alpha / 4;
    double g0 = -1.0 / 18 - beta / 4;
    double g1 = 35.0 / 18 - beta / 4;
    std::array<Vec3, 4> v;
    v[SignPair{+1, +1}.index()] = {fa, g0, 1};
    v[SignPair{+1, -1}.index()] = {fb, g0, 1};
    v[SignPair{-1, +1}.index()] = {fb, g0, 1};
    v[SignPair{-1, -1}.index()] = {fa, g1, 1};
    return PiecewiseField::from_constants(v);
}

BilinearSystem bt_family::xy_system(double alpha, double beta) {
    return reduced_bilinear_system(fields(alpha, beta), Regime::fixed_ratio(1.0));
}

Vec2 bt_family::normal_form(double alpha, double beta) {
    double mu = -1.5 * beta + 1.125 * alpha * alpha - 1.125 * alpha * beta +
                (9.0 / 32) * beta * beta - 1.5 * alpha;
    double nu = 2.25 * (alpha - beta / 2);
    return {mu, nu};
}

double bt_family::discriminant(double alpha, double beta) {
    return 36 * alpha * alpha - 36 * alpha * beta + 9 * beta * beta - 48 * alpha - 48 * beta;
}

bt_family::Region bt_family::region(double alpha, double beta, const RegionOptions& opts) {
    if (std::abs(alpha) > 0.5 || std::abs(beta) > 0.5)
        throw std::domain_error("bt_family::region: |alpha|, |beta| must be <= 0.5");
    if (std::abs(alpha) <= opts.tol && std::abs(beta) <= opts.tol) return Region::BT_origin;

    double delta = discriminant(alpha, beta);
    if (delta < -opts.tol) return Region::I;
    if (std::abs(delta) <= opts.tol) return Region::S;

    BilinearSystem b = xy_system(alpha, beta);
    std::vector<Vec2> eqs = bilinear_equilibria(b.eqx, b.eqy);
    if (eqs.empty()) return Region::I;
    if (eqs.size() == 1) return Region::S;

    const Vec2* focus = nullptr;
    for (const Vec2& p : eqs) {
        Mat2 J{b.eqx.dx(p.x, p.y), b.eqx.dy(p.x, p.y), b.eqy.dx(p.x, p.y),
               b.eqy.dy(p.x, p.y)};
        if (J.det() > 0) focus = &p;
    }
    if (!focus) return Region::C_approx;

    Mat2 J{b.eqx.dx(focus->x, focus->y), b.eqx.dy(focus->x, focus->y),
           b.eqy.dx(focus->x, focus->y), b.eqy.dy(focus->x, focus->y)};
    double tr = J.trace();
    if (std::abs(tr) <= opts.tol) return Region::H;
    if (tr > 0) return Region::II;

    // attracting non-saddle: look for a repelling cycle via backward time
    Vec2 f0 = *focus;
    auto bwd = [&b](const Vec2& p) {
        return Vec2{-b.eqx.eval(p.x, p.y), -b.eqy.eval(p.x, p.y)};
    };
    double last_r = -1.0;
    int verdict = 0;  // 0 undecided, 1 cycle, 2 escape
    auto observer = [&](double, const Vec2& x, double, const Vec2& xn) {
        double g0 = x.y - f0.y;
        double g1 = xn.y - f0.y;
        if (g0 * g1 < 0.0 && x.x > f0.x) {
            double lam = g0 / (g0 - g1);
            double cx = x.x + lam * (xn.x - x.x);
            double r = cx - f0.x;
            if (r > 0) {
                if (last_r >= 0 && std::abs(r - last_r) < opts.recurrence &&
                    r > 10 * opts.recurrence) {
                    verdict = 1;
                    return false;
                }
                last_r = r;
            }
        }
        if (std::hypot(xn.x - f0.x, xn.y - f0.y) > opts.escape_radius) {
            verdict = 2;
            return false;
        }
        return true;
    };
    detail::integrate_adaptive2(bwd, Vec2{f0.x + opts.ring_radius, f0.y}, opts.window,
                                1e-10, observer);
    if (verdict == 1) return Region::III;
    if (verdict == 2) return Region::IV;
    return Region::C_approx;
}

}  // namespace twocross
