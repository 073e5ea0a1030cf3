#pragma once

#include <array>
#include <cmath>

#include "twocross/model.hpp"
#include "twocross/quadratic.hpp"

namespace tt {

using namespace twocross;

/// Constant field (-sgn(x1), -sgn(x2), 1): the axis attracts from every side.
inline PiecewiseField uniform_attractor() {
    std::array<Vec3, 4> v;
    for (SignPair s : SignPair::all())
        v[s.index()] = {static_cast<double>(-s.s1), static_cast<double>(-s.s2), 1.0};
    return PiecewiseField::from_constants(v);
}

/// Polynomial quadrant fields (the cubic_fields.model content).
inline PiecewiseField cubic_fields() {
    PiecewiseField pw;
    auto f3 = [](const char* a, const char* b, const char* c) {
        return SmoothField3{parse_expression(a), parse_expression(b), parse_expression(c)};
    };
    pw.field({+1, +1}) = f3("-1 + x1^2", "-1 + x2^2", "x3");
    pw.field({+1, -1}) = f3("-1 + x1*x2", "1 - x3*x2", "x3");
    pw.field({-1, +1}) = f3("1 + x1 + x3", "-1", "x3");
    pw.field({-1, -1}) = f3("1", "1 + x3^2", "x3");
    return pw;
}

/// Constant fields whose reduced system is x' = xy - 191/450 with a
/// regime-dependent node (the radical_node.model content).
inline PiecewiseField radical_node() {
    double r = std::sqrt(13519.0) / 1173.0;
    double g_small = 13969.0 / 351900.0 - r;
    double g_big = 717769.0 / 351900.0 - r;
    std::array<Vec3, 4> v;
    v[SignPair{+1, +1}.index()] = {259.0 / 1800, g_small, 1};
    v[SignPair{+1, -1}.index()] = {-641.0 / 1800, g_small, 1};
    v[SignPair{-1, +1}.index()] = {-641.0 / 1800, g_small, 1};
    v[SignPair{-1, -1}.index()] = {259.0 / 1800, g_big, 1};
    return PiecewiseField::from_constants(v);
}

inline PiecewiseField focus_saddle() { return bt_family::fields(-0.06, 0.04); }

// frozen closed-form values of the radical_node non-saddle equilibrium
inline constexpr double kRadicalP1 = 0.693991361295339;
inline constexpr double kRadicalP2 = 0.6115990315098684;

}  // namespace tt
