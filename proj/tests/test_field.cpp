#include <random>

#include "doctest.h"
#include "helpers.hpp"

using namespace twocross;

TEST_CASE("stratum_of uses a tolerance-based zero") {
    CHECK(stratum_of({0.5, -0.3, 7}, 1e-9).label() == "M+-");
    CHECK(stratum_of({0.0, 1e-12, 0.0}, 1e-9).label() == "S00");
    CHECK(stratum_of({395.0 / 236, 0.0, 3.0}, 1e-9).label() == "S+0");
    CHECK(stratum_of({0.0, 1e-12, 0.0}, 1e-9).codim() == 2);
    CHECK(stratum_of({1, 1, 1}, 1e-9).codim() == 0);
}

TEST_CASE("transition functions saturate and stay monotone") {
    TransitionFunction ident{TransitionFunction::clamped_identity};
    TransitionFunction cubic{TransitionFunction::clamped_cubic};
    CHECK(ident(0.5) == 0.5);
    CHECK(ident(-2.0) == -1.0);
    CHECK(cubic(-2.0) == -1.0);
    CHECK(cubic(0.5) == doctest::Approx(0.6875).epsilon(1e-15));
    CHECK(cubic(1.0) == 1.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> in(-0.999, 0.999);
    for (const auto& phi : {ident, cubic}) {
        for (int i = 0; i < 200; ++i) {
            double t1 = in(rng), t2 = in(rng);
            if (t1 > t2) std::swap(t1, t2);
            if (t1 < t2) CHECK(phi(t1) < phi(t2));
            CHECK(phi(-t1) == doctest::Approx(-phi(t1)).epsilon(1e-15));
        }
        CHECK(phi.deriv(1.5) == 0.0);
        CHECK(phi.deriv(0.0) > 0.0);
    }
}

TEST_CASE("convex weights form a partition of unity") {
    CHECK(convex_weight({+1, +1}, 1, 1) == 1.0);
    CHECK(convex_weight({+1, -1}, 0, 0) == 0.25);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int i = 0; i < 500; ++i) {
        double a = u(rng), b = u(rng);
        double sum = 0;
        for (SignPair s : SignPair::all()) sum += convex_weight(s, a, b);
        CHECK(std::abs(sum - 1.0) <= 1e-14);
    }
}

TEST_CASE("field evaluation") {
    PiecewiseField cubic = tt::cubic_fields();
    Vec3 v = cubic.eval({+1, +1}, {0, 0, 0});
    CHECK(v.x1 == doctest::Approx(-1));
    CHECK(v.x2 == doctest::Approx(-1));
    CHECK(v.x3 == doctest::Approx(0));
    v = cubic.eval({+1, +1}, {1, 1, 1});
    CHECK(v.x1 == doctest::Approx(0));
    CHECK(v.x2 == doctest::Approx(0));
    CHECK(v.x3 == doctest::Approx(1));

    PiecewiseField att = tt::uniform_attractor();
    for (double x : {-2.0, 0.5, 3.0}) {
        Vec3 w = att.eval({+1, +1}, {x, x, x});
        CHECK(w.x1 == -1.0);
        CHECK(w.x2 == -1.0);
        CHECK(w.x3 == 1.0);
    }
    CHECK(att.all_constant());
    CHECK_FALSE(cubic.all_constant());
}
