#pragma once

#include <optional>

#include "twocross/field.hpp"

namespace twocross {

enum class Codim1Tag { SEWING, SLIDING, TANGENCY };

struct Codim1Class {
    Codim1Tag tag;
    double lie_plus;   // normal component of the field on the positive side
    double lie_minus;  // normal component of the field on the negative side
    Stratum stratum;
};

/// Convex combination tangent to the stratum: (1-rho) X+ + rho X-.
struct SlidingCombination {
    double rho;
    Vec3 field_value;
};

enum class ExitSide { EXIT_PLUS, EXIT_MINUS };

/// Classify a point on a codimension-1 stratum (exactly one of x1, x2 within
/// tol of zero). Points with both coordinates within tol are refused: the
/// pairwise convention is undefined on the codimension-2 axis.
Codim1Class classify_codim1(const PiecewiseField& pw, const Vec3& p, double tol = 1e-9);

/// Filippov sliding field at a SLIDING point, rho = X+f / (X+f - X-f).
/// Throws when the point does not slide or the denominator vanishes.
SlidingCombination sliding_field_codim1(const PiecewiseField& pw, const Vec3& p,
                                        double tol = 1e-9);

/// First-order exit condition along a sliding arc: rho reaching 0 exits to the
/// positive side, rho reaching 1 to the negative side.
std::optional<ExitSide> exit_condition(double rho, double tol = 1e-9);

}  // namespace twocross
