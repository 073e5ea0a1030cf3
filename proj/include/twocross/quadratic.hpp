#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twocross/regularization.hpp"

namespace twocross {

/// x' = A(x-a)(y-b) - B,  y' = C(x-c)(y-d) - D,  with A != 0, C != 0.
struct QuadSystem {
    double A = 1, B = 0, C = 1, D = 0;
    double a = 0, b = 0, c = 0, d = 0;

    Vec2 rhs(const Vec2& p) const {
        return {A * (p.x - a) * (p.y - b) - B, C * (p.x - c) * (p.y - d) - D};
    }
    Mat2 jacobian(const Vec2& p) const {
        return {A * (p.y - b), A * (p.x - a), C * (p.y - d), C * (p.x - c)};
    }
};

enum class CaseTag { I, II, III, IV, V, VI };
std::string to_string(CaseTag t);

/// Affine equivalence class by the pattern of (a vs c, b vs d, B, D);
/// equalities tested with a relative tolerance.
CaseTag affine_classify(const QuadSystem& q, double tol = 1e-9);

/// Change of variables x -> u*x + v, y -> w*y + r plus the time rescale
/// t_old = sigma * t_new that carries a system onto its normalized form.
struct AffineMap {
    double u = 1, v = 0, w = 1, r = 0, sigma = 1;

    Vec2 to_old(const Vec2& p) const { return {u * p.x + v, w * p.y + r}; }
    /// Field seen in the new chart: (sigma/u) F1, (sigma/w) F2 at to_old(p).
    Vec2 push_field(const QuadSystem& q, const Vec2& p) const {
        Vec2 f = q.rhs(to_old(p));
        return {f.x * sigma / u, f.y * sigma / w};
    }
};

struct AffineNormalization {
    CaseTag tag;
    double Bn = 0, Cn = 0, Dn = 0;  // parameters of the normalized form (per case)
    AffineMap map;
    QuadSystem normalized;  // the normalized system as a QuadSystem
    std::string note;       // e.g. sign variant when the printed form is unreachable
};

/// Normalize per the case table. Throws when the claimed pattern is degenerate.
AffineNormalization affine_normalize(const QuadSystem& q, double tol = 1e-9);

struct LineFamily {
    enum Axis { horizontal, vertical } axis;
    double level;  // y = level (horizontal) or x = level (vertical)
};

struct QuadEquilibria {
    std::vector<Vec2> points;
    std::optional<LineFamily> family;
};

/// Closed-form equilibria (substitution to a quadratic); shared line
/// components are reported as a family.
QuadEquilibria equilibria_quadratic(const QuadSystem& q);

/// Center condition for the normalized cases II and III:
/// II: D < 0 and B = D - sqrt(-D); III: B < 0 and D = B - sqrt(-B).
bool center_check(CaseTag tag, double B, double D, double tol = 1e-10);

struct BTCoefficients {
    double b00, b01, b20, b11;  // x' = y, y' = b00 + b01 y + b20 x^2 + b11 xy + y^2
};

/// Bogdanov-Takens coefficients of normalized case I with
/// B = B1 + C^2/(1+C)^2, D = D1 + C/(1+C)^2, computed by running the
/// reduction chain (translation to the degenerate equilibrium, time rescale
/// (1+C)/C, Jordan-basis change, unfolding shifts) on exact quadratic
/// coefficients. Requires C not in {-1, 0, 1}.
BTCoefficients bt_normal_form(double C, double B1, double D1);

/// The built-in two-parameter demo family whose reduced xy-system unfolds a
/// Bogdanov-Takens point at alpha = beta = 0.
namespace bt_family {

PiecewiseField fields(double alpha, double beta);
BilinearSystem xy_system(double alpha, double beta);

/// (mu, nu) of the normal form y' = mu + nu*y - (9/2)x^2 + (3/2)xy + y^2.
Vec2 normal_form(double alpha, double beta);

enum class Region { I, S, II, H, III, C_approx, IV, BT_origin };
std::string to_string(Region r);

/// Saddle-node discriminant: equilibria of the xy-system exist iff >= 0.
double discriminant(double alpha, double beta);

struct RegionOptions {
    double tol = 1e-9;            // curve proximity (S, H, origin)
    double window = 200.0;        // cycle-detection time budget
    double recurrence = 1e-3;     // successive return-radius tolerance
    double ring_radius = 0.02;    // backward start offset from the focus
    double escape_radius = 2.0;   // distance-from-focus escape threshold
};

/// Fig.-style region of the (alpha, beta) plane, |alpha|,|beta| <= 0.5.
/// The III/IV split runs repelling-cycle detection (backward integration
/// from a ring around the attracting non-saddle); inconclusive detection
/// reports C_approx.
Region region(double alpha, double beta, const RegionOptions& opts = {});

}  // namespace bt_family

}  // namespace twocross
