#pragma once

#include <algorithm>
#include <cmath>
#include <functional>

#include "twocross/vec.hpp"

namespace twocross::detail {

/// Dormand-Prince 5(4) step: returns the 5th-order estimate and the embedded
/// error estimate (max-norm of the 5th/4th order difference).
template <typename F>
inline void dopri45_step(const F& f, const Vec2& x, double h, Vec2& out, double& err) {
    static const double a21 = 1.0 / 5;
    static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
    static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static const double e1 = 5179.0 / 57600, e3 = 7571.0 / 16695, e4 = 393.0 / 640,
                        e5 = -92097.0 / 339200, e6 = 187.0 / 2100, e7 = 1.0 / 40;

    Vec2 k1 = f(x);
    Vec2 k2 = f(x + k1 * (h * a21));
    Vec2 k3 = f(x + k1 * (h * a31) + k2 * (h * a32));
    Vec2 k4 = f(x + k1 * (h * a41) + k2 * (h * a42) + k3 * (h * a43));
    Vec2 k5 = f(x + k1 * (h * a51) + k2 * (h * a52) + k3 * (h * a53) + k4 * (h * a54));
    Vec2 k6 = f(x + k1 * (h * a61) + k2 * (h * a62) + k3 * (h * a63) + k4 * (h * a64) +
                k5 * (h * a65));
    Vec2 x5 = x + (k1 * b1 + k3 * b3 + k4 * b4 + k5 * b5 + k6 * b6) * h;
    Vec2 k7 = f(x5);
    Vec2 x4 = x + (k1 * e1 + k3 * e3 + k4 * e4 + k5 * e5 + k6 * e6 + k7 * e7) * h;
    out = x5;
    err = std::max(std::abs(x5.x - x4.x), std::abs(x5.y - x4.y));
}

/// Locate g(x(tau)) = 0 within one accepted step from x (0 < tau <= h) by
/// bisection on partial steps; g(step(h)) must differ in sign from g(x).
template <typename F, typename G>
inline Vec2 refine_crossing(const F& f, const Vec2& x, double h, const G& g) {
    double lo = 0.0, hi = h;
    double glo = g(x);
    Vec2 best;
    double err;
    dopri45_step(f, x, hi, best, err);
    for (int i = 0; i < 60 && hi - lo > 1e-14 * h; ++i) {
        double mid = 0.5 * (lo + hi);
        Vec2 xm;
        dopri45_step(f, x, mid, xm, err);
        if (g(xm) * glo > 0) {
            lo = mid;
        } else {
            hi = mid;
            best = xm;
        }
    }
    return best;
}

/// Adaptive integration of a planar field up to tmax. The observer sees each
/// accepted step (t, x, t_new, x_new) and may return false to stop early.
/// Returns the reached time.
template <typename F, typename Obs>
inline double integrate_adaptive2(const F& f, Vec2 x, double tmax, double tol, Obs&& observer) {
    double t = 0.0;
    double h = 1e-3;
    while (t < tmax) {
        h = std::min(h, tmax - t);
        Vec2 xn;
        double err;
        dopri45_step(f, x, h, xn, err);
        double sc = tol * (1.0 + std::max(std::abs(x.x), std::abs(x.y)));
        if (err <= sc) {
            double tn = t + h;
            if (!observer(t, x, tn, xn)) return tn;
            t = tn;
            x = xn;
        }
        double fac = 0.9 * std::pow(sc / std::max(err, 1e-300), 0.2);
        h *= std::clamp(fac, 0.2, 5.0);
        if (h < 1e-14) break;
    }
    return t;
}

}  // namespace twocross::detail
