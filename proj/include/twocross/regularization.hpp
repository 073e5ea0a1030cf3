#pragma once

#include <stdexcept>
#include <vector>

#include "twocross/field.hpp"

namespace twocross {

/// How the ratio eps/eta behaves along the regularization curve.
struct Regime {
    enum Kind { fixed, to_zero, to_infinity } kind = fixed;
    double k = 1.0;  // the fixed ratio eps/eta when kind == fixed

    static Regime fixed_ratio(double k) { return {fixed, k}; }
    static Regime zero() { return {to_zero, 0.0}; }
    static Regime infinity() { return {to_infinity, 0.0}; }
    std::string label() const;
};

/// Smooth interpolation of the four quadrant fields,
///   sum_s convex_weight(s, phi(x1/eps), phi(x2/eta)) X_s(p).
/// Equals the active quadrant field exactly once |x1| >= eps and |x2| >= eta.
Vec3 regularized_eval(const PiecewiseField& pw, const TransitionFunction& phi,
                      double eps, double eta, const Vec3& p);

/// Argument passed to the quadrant fields inside the blown-up slow system:
/// `strict` evaluates at the blow-down limit (0, 0, x3); `full` keeps the
/// blown-up coordinates (x1b, x2b, x3).
enum class ArgMode { strict, full };

/// Weight scaling of the slow components: `unnormalized` uses
/// (1+s1 phi)(1+s2 phi) (sums to 4), `convex` divides by 4. The third
/// component (the slow drift) is always convex.
enum class WeightScaling { unnormalized, convex };

/// Components (X1, X2, X3) of the slow system after the blow-up
/// x1 -> eps*x1b, x2 -> K*eps*x2b; X2 carries the 1/K factor.
Vec3 blowup_slow_eval(const PiecewiseField& pw, const TransitionFunction& phi, double K,
                      const Vec3& q, ArgMode mode,
                      WeightScaling scaling = WeightScaling::unnormalized);

/// c00 + c10*x + c01*y + c11*x*y
struct BilinearEq {
    double c00 = 0, c10 = 0, c01 = 0, c11 = 0;

    double eval(double x, double y) const { return c00 + c10 * x + c01 * y + c11 * x * y; }
    double dx(double x, double y) const { (void)x; return c10 + c11 * y; }
    double dy(double x, double y) const { (void)y; return c01 + c11 * x; }
};

/// Reduced planar system on the blow-up box: xdot = eqx, ydot = (eps/eta)*eqy,
/// with unnormalized sign-weighted sums as coefficients.
struct BilinearSystem {
    BilinearEq eqx, eqy;
    Regime regime;
};

/// Sign-weighted coefficient sums of a constant piecewise field:
/// eqx.c00 = sum a_s, c10 = sum s1 a_s, c01 = sum s2 a_s, c11 = sum s1 s2 a_s,
/// and likewise eqy from the second components. Throws on non-constant input.
BilinearSystem reduced_bilinear_system(const PiecewiseField& pw, Regime regime);

struct DegenerateLambda : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Factored form of the convex-scaled reduced system:
///   xdot = lambda1 (x - alpha1)(y - beta1) - delta1,
///   ydot = (eps/eta) [lambda2 (x - alpha2)(y - beta2) - delta2],
/// with lambda_i = c11_i / 4.
struct FactoredBilinear {
    double lambda1, alpha1, beta1, delta1;
    double lambda2, alpha2, beta2, delta2;
};

FactoredBilinear factor_bilinear(const BilinearSystem& b);

/// Expand a factored form back to the unnormalized coefficient convention
/// (4x the factored expansion); inverse of factor_bilinear.
BilinearSystem reconstruct_bilinear(const FactoredBilinear& f, Regime regime);

/// After translating by (alpha1, beta1) and rescaling time by 1/lambda1:
///   xdot = x*y - delta1,
///   ydot = (eps/eta) [C (x - alpha2)(y - beta2) - delta2],  C = lambda2/lambda1.
/// shift and time_scale record the applied affine map for pulling answers back.
struct UnitProductForm {
    double delta1, C, alpha2, beta2, delta2;
    double shift_x, shift_y;  // subtracted from (x, y)
    double time_scale;        // old time = time_scale * new time (= 1/lambda1)
};

UnitProductForm normalize_factored(const FactoredBilinear& f);

/// All isolated real common roots of two bilinear equations (substitution
/// reduces to a quadratic). Empty when none or when the zero sets share a
/// whole component.
std::vector<Vec2> bilinear_equilibria(const BilinearEq& ex, const BilinearEq& ey);

}  // namespace twocross
