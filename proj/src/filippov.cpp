#include "twocross/filippov.hpp"

#include <stdexcept>

namespace twocross {

Codim1Class classify_codim1(const PiecewiseField& pw, const Vec3& p, double tol) {
    Stratum st = stratum_of(p, tol);
    if (st.codim() != 1) {
        if (st.codim() == 2)
            throw std::domain_error(
                "classify_codim1: point lies on the codimension-2 axis; the pairwise "
                "convention is undefined there");
        throw std::domain_error("classify_codim1: point is not on a switching stratum");
    }

    SignPair plus_side, minus_side;
    double lp, lm;
    if (st.sig1 == 0) {
        // normal coordinate x1; neighbours share sign(x2)
        plus_side = SignPair{+1, st.sig2};
        minus_side = SignPair{-1, st.sig2};
        Vec3 fp = pw.eval(plus_side, p);
        Vec3 fm = pw.eval(minus_side, p);
        lp = fp.x1;
        lm = fm.x1;
        double scale_p = 1.0 + fp.norm();
        double scale_m = 1.0 + fm.norm();
        if (std::abs(lp) < tol * scale_p || std::abs(lm) < tol * scale_m)
            return {Codim1Tag::TANGENCY, lp, lm, st};
    } else {
        plus_side = SignPair{st.sig1, +1};
        minus_side = SignPair{st.sig1, -1};
        Vec3 fp = pw.eval(plus_side, p);
        Vec3 fm = pw.eval(minus_side, p);
        lp = fp.x2;
        lm = fm.x2;
        double scale_p = 1.0 + fp.norm();
        double scale_m = 1.0 + fm.norm();
        if (std::abs(lp) < tol * scale_p || std::abs(lm) < tol * scale_m)
            return {Codim1Tag::TANGENCY, lp, lm, st};
    }
    Codim1Tag tag = (lp * lm < 0.0) ? Codim1Tag::SLIDING : Codim1Tag::SEWING;
    return {tag, lp, lm, st};
}

SlidingCombination sliding_field_codim1(const PiecewiseField& pw, const Vec3& p,
                                        double tol) {
    Codim1Class c = classify_codim1(pw, p, tol);
    if (c.tag != Codim1Tag::SLIDING)
        throw std::domain_error("sliding_field_codim1: point is not a sliding point");

    double denom = c.lie_plus - c.lie_minus;
    Vec3 fp, fm;
    if (c.stratum.sig1 == 0) {
        fp = pw.eval(SignPair{+1, c.stratum.sig2}, p);
        fm = pw.eval(SignPair{-1, c.stratum.sig2}, p);
    } else {
        fp = pw.eval(SignPair{c.stratum.sig1, +1}, p);
        fm = pw.eval(SignPair{c.stratum.sig1, -1}, p);
    }
    if (std::abs(denom) < tol * (1.0 + fp.norm() + fm.norm()))
        throw std::domain_error("sliding_field_codim1: tangency (vanishing denominator)");

    double rho = c.lie_plus / denom;
    Vec3 value = fp * (1.0 - rho) + fm * rho;
    return {rho, value};
}

std::optional<ExitSide> exit_condition(double rho, double tol) {
    if (rho <= tol) return ExitSide::EXIT_PLUS;
    if (rho >= 1.0 - tol) return ExitSide::EXIT_MINUS;
    return std::nullopt;
}

}  // namespace twocross
