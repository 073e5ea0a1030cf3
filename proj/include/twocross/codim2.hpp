#pragma once

#include <string>
#include <vector>

#include "twocross/regularization.hpp"

namespace twocross {

enum class EquilibriumType {
    saddle,
    stable_node,
    unstable_node,
    stable_focus,
    unstable_focus,
    center_boundary,
    degenerate
};

enum class Stability { attracting, repelling, saddle, undecided };

std::string to_string(EquilibriumType t);
std::string to_string(Stability s);

struct EquilibriumReport {
    Vec2 location;
    Mat2 jacobian;  // at the regime's representative ratio (k, or 1 for limits)
    double trace = 0, det = 0;
    EquilibriumType type = EquilibriumType::degenerate;
    bool in_unit_square = false;  // strictly inside (-1,1)^2 (tol 1e-9)
    Stability regime_stability = Stability::undecided;
};

/// Equilibria of the blown-up slow system at fixed x3, restricted to [-1,1]^2.
/// Constant fields use the closed-form bilinear roots; otherwise damped Newton
/// from a 9x9 seed grid (residual < 1e-10, dedup radius 1e-7).
std::vector<Vec2> slow_manifold_equilibria(const PiecewiseField& pw, double x3, double K,
                                           ArgMode mode);

/// Jacobian of (X1, X2) w.r.t. (x1b, x2b) at `point`; central differences with
/// step 1e-6*(1+|x|), exact coefficients when the fields are constant.
Mat2 slow_jacobian(const PiecewiseField& pw, const Vec2& point, double x3, double K,
                   ArgMode mode, WeightScaling scaling = WeightScaling::unnormalized);

struct IndicatorEntry {
    Vec2 equilibrium;
    Mat2 jacobian;
    double D;  // trace * det; nonzero certifies sliding at (0,0,x3)
};

/// The sliding indicator per slow-manifold equilibrium (unnormalized scaling;
/// the sign of D is invariant under any positive rescaling).
std::vector<IndicatorEntry> sliding_indicator(const PiecewiseField& pw, double x3,
                                              double K, ArgMode mode);

EquilibriumType classify_equilibrium(const Mat2& J, double tol = 1e-9);

/// Stability of an equilibrium of the reduced system under the ratio regime.
/// Limits are probed at ratios {1e-2,1e-4,1e-6} (resp. {1e2,1e4,1e6}); if the
/// sign patterns disagree across the ladder the result is `undecided`.
Stability ratio_regime_stability(const BilinearSystem& b, const Vec2& P, Regime regime);

struct SlidingVerdict {
    enum Tag { SLIDING, NO_EQUILIBRIUM, UNDETERMINED } tag = UNDETERMINED;
    std::vector<EquilibriumReport> certificate;
    std::vector<double> indicator_values;  // D per certificate entry (ratio 1/k)
    Regime regime;
    std::string method;  // decision rule used
    std::string note;
    static std::string tag_label(Tag t);
};

/// Codimension-2 sliding decision for a constant piecewise field with nonzero
/// third components. Two equilibria inside (-1,1)^2 certify sliding; a single
/// hyperbolic non-center one under the regime does as well. NO_EQUILIBRIUM
/// means no sliding is certified, not that sliding is absent.
SlidingVerdict sliding_verdict(const PiecewiseField& pw, Regime regime);

struct ConstantApproximation {
    PiecewiseField frozen;
    bool valid;  // all |f_s|, |g_s| at p0 exceed tol
};

/// Freeze the quadrant fields at p0. The approximation preserves sliding
/// verdicts near p0 when the transversality flag holds.
ConstantApproximation constant_approximation(const PiecewiseField& pw, const Vec3& p0,
                                             double tol = 1e-9);

}  // namespace twocross
