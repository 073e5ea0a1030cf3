#include "doctest.h"
#include "helpers.hpp"
#include "twocross/integrator.hpp"

using namespace twocross;

TEST_CASE("event-driven trajectory of the focus_saddle model") {
    IntegrateOptions opts;
    opts.step = 1e-3;
    opts.event_tol = 1e-10;
    Trajectory tr = integrate_piecewise(tt::focus_saddle(), {0.5, 0.5, 0}, 13.0, opts);

    REQUIRE(tr.events.size() >= 3);
    CHECK(tr.events[0].kind == Event::CROSS);
    CHECK(tr.events[0].time == doctest::Approx(450.0 / 59).epsilon(1e-9));
    CHECK(tr.events[0].point.x1 == doctest::Approx(395.0 / 236).epsilon(1e-9));
    CHECK(std::abs(tr.events[0].point.x2) < 1e-12);

    CHECK(tr.events[1].kind == Event::SLIDE_ENTER);
    CHECK(tr.events[1].time == doctest::Approx(458100.0 / 36757).epsilon(1e-9));
    CHECK(std::abs(tr.events[1].point.x1) < 1e-12);
    CHECK(tr.events[1].point.x2 == doctest::Approx(-395.0 / 1246).epsilon(1e-9));

    CHECK(tr.events[2].kind == Event::PIN_SIGMA00);
    CHECK(tr.events[2].time == doctest::Approx(1779300.0 / 140066).epsilon(1e-9));
    CHECK(std::abs(tr.events[2].point.x1) < 1e-12);
    CHECK(std::abs(tr.events[2].point.x2) < 1e-12);

    // strictly increasing event times
    for (size_t i = 1; i < tr.events.size(); ++i)
        CHECK(tr.events[i].time > tr.events[i - 1].time);

    // sliding confinement and quadrant consistency
    for (const auto& s : tr.states) {
        if (s.mode == ModeKind::SLIDE1 && s.stratum.sig1 == 0) CHECK(s.position.x1 == 0.0);
        if (s.mode == ModeKind::PINNED) {
            CHECK(s.position.x1 == 0.0);
            CHECK(s.position.x2 == 0.0);
        }
    }
    // after pinning, x3 drifts at rate 1
    const auto& last = tr.states.back();
    CHECK(last.mode == ModeKind::PINNED);
    CHECK(last.position.x3 ==
          doctest::Approx(tr.events[2].point.x3 + (last.time - tr.events[2].time))
              .epsilon(1e-9));
}

TEST_CASE("flow states stay in their quadrant") {
    IntegrateOptions opts;
    Trajectory tr = integrate_piecewise(tt::focus_saddle(), {0.5, 0.5, 0}, 5.0, opts);
    for (const auto& s : tr.states) {
        if (s.mode != ModeKind::FLOW) continue;
        if (s.position.x1 == 0.0 || s.position.x2 == 0.0) continue;  // event endpoints
        Stratum st = stratum_of(s.position, 0.0);
        CHECK(st.sig1 == s.stratum.sig1);
        CHECK(st.sig2 == s.stratum.sig2);
    }
}

TEST_CASE("sliding exits through rho = 0 and re-enters on the next stratum") {
    // f(+-) = x2 + 0.4 changes sign along the sliding arc on S0-: rho reaches
    // 0 at x2 = -0.4 and the trajectory exits into the x1 > 0 side, then
    // reaches S+0, slides again and pins on the axis.
    PiecewiseField pw;
    auto c3 = [](double a, double b, double c) {
        return SmoothField3{make_constant(a), make_constant(b), make_constant(c)};
    };
    pw.field({+1, +1}) = c3(-1, -1, 1);
    pw.field({+1, -1}) =
        SmoothField3{parse_expression("x2 + 0.4"), make_constant(1), make_constant(1)};
    pw.field({-1, +1}) = c3(1, -1, 1);
    pw.field({-1, -1}) = c3(1, 1, 1);

    IntegrateOptions opts;
    opts.step = 1e-3;
    Trajectory tr = integrate_piecewise(pw, {0.05, -0.8, 0}, 2.0, opts);
    REQUIRE(tr.events.size() >= 4);
    CHECK(tr.events[0].kind == Event::SLIDE_ENTER);
    CHECK(tr.events[1].kind == Event::SLIDE_EXIT);
    CHECK(tr.events[1].detail == "EXIT_PLUS");
    CHECK(tr.events[1].point.x2 == doctest::Approx(-0.4).epsilon(1e-7));
    CHECK(std::abs(tr.events[1].point.x1) < 1e-12);
    CHECK(tr.events[2].kind == Event::SLIDE_ENTER);
    CHECK(std::abs(tr.events[2].point.x2) < 1e-12);
    CHECK(tr.events[3].kind == Event::PIN_SIGMA00);
}

TEST_CASE("codimension-2 drift") {
    CHECK(codim2_drift(tt::uniform_attractor(), 0.0, Regime::fixed_ratio(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-14));
    CHECK(codim2_drift(tt::focus_saddle(), 0.0, Regime::fixed_ratio(1.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    // weights act on unequal drift components: h(++) = 2, others 1,
    // attracting equilibrium at the origin
    std::array<Vec3, 4> v;
    for (SignPair s : SignPair::all())
        v[s.index()] = {static_cast<double>(-s.s1), static_cast<double>(-s.s2), 1.0};
    v[SignPair{+1, +1}.index()].x3 = 2.0;
    CHECK(codim2_drift(PiecewiseField::from_constants(v), 0.0, Regime::fixed_ratio(1.0)) ==
          doctest::Approx(1.25).epsilon(1e-14));

    // region-I parameters: no equilibrium, drift undefined
    CHECK_THROWS_AS(codim2_drift(bt_family::fields(0.1, 0.1), 0.0, Regime::fixed_ratio(1.0)),
                    DriftError);
}

TEST_CASE("regularized integration matches the plain field away from the bands") {
    PiecewiseField fs = tt::focus_saddle();
    TransitionFunction phi;
    RegularizedOptions ro;
    ro.step = 1e-3;
    Trajectory reg = integrate_regularized(fs, phi, 0.01, 0.01, {0.5, 0.5, 0}, 2.0, ro);

    IntegrateOptions po;
    po.step = 1e-3;
    Trajectory pie = integrate_piecewise(fs, {0.5, 0.5, 0}, 2.0, po);
    REQUIRE(reg.states.size() == pie.states.size());
    for (size_t i = 0; i < reg.states.size(); ++i) {
        CHECK(reg.states[i].position.x1 ==
              doctest::Approx(pie.states[i].position.x1).epsilon(1e-12));
        CHECK(reg.states[i].position.x2 ==
              doctest::Approx(pie.states[i].position.x2).epsilon(1e-12));
    }
}

TEST_CASE("regularized runs are captured by the attracting band") {
    TransitionFunction phi;
    for (double eps : {0.1, 0.01}) {
        RegularizedOptions ro;
        ro.step = 1e-3;
        Trajectory tr =
            integrate_regularized(tt::uniform_attractor(), phi, eps, eps, {1, 1, 0}, 5.0, ro);
        const Vec3& p = tr.states.back().position;
        CHECK(std::abs(p.x1) < eps);
        CHECK(std::abs(p.x2) < eps);
    }
}

TEST_CASE("stiffness guard rejects oversized steps") {
    TransitionFunction phi;
    RegularizedOptions ro;
    ro.step = 1e-2;
    // off-grid start so that steps straddle the narrow band
    CHECK_THROWS_AS(integrate_regularized(tt::uniform_attractor(), phi, 1e-4, 1e-4,
                                          {0.503, 0.491, 0}, 2.0, ro),
                    StiffnessError);
}

TEST_CASE("convergence probe") {
    TransitionFunction phi;
    auto rows = convergence_probe(tt::uniform_attractor(), phi, {1, 1, 0},
                                  {{0.1, 0.1}, {0.05, 0.05}, {0.01, 0.01}}, 5.0);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].distance < 0.1);
    CHECK(rows[1].distance < rows[0].distance);
    CHECK(rows[2].distance < rows[1].distance);

    // no x1/x2 dynamics: distance stays at the initial offset
    std::array<Vec3, 4> v;
    for (SignPair s : SignPair::all()) v[s.index()] = {0.0, 0.0, 1.0};
    auto flat = convergence_probe(PiecewiseField::from_constants(v), phi, {0.3, 0.4, 0},
                                  {{0.1, 0.1}}, 2.0);
    CHECK(flat[0].distance == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("chattering guard stops event cascades") {
    IntegrateOptions opts;
    opts.step = 1e-3;
    opts.event_tol = 0.4;  // window 10*event_tol = 4 spans the last two events
    opts.chatter_events = 2;
    Trajectory tr = integrate_piecewise(tt::focus_saddle(), {0.5, 0.5, 0}, 13.0, opts);
    REQUIRE(!tr.events.empty());
    CHECK(tr.events.back().kind == Event::STOP);
    CHECK(tr.events.back().detail == "CHATTER");
}

TEST_CASE("csv serialization") {
    IntegrateOptions opts;
    Trajectory tr = integrate_piecewise(tt::focus_saddle(), {0.5, 0.5, 0}, 1.0, opts);
    std::string t = trajectory_csv(tr);
    CHECK(t.rfind("t,x1,x2,x3,mode\n", 0) == 0);
    CHECK(t.find("FLOW_PP") != std::string::npos);
    std::string e = events_csv(tr);
    CHECK(e.rfind("t,kind,x1,x2,x3\n", 0) == 0);
    // identical inputs give identical bytes
    Trajectory tr2 = integrate_piecewise(tt::focus_saddle(), {0.5, 0.5, 0}, 1.0, opts);
    CHECK(trajectory_csv(tr2) == t);
    CHECK(events_csv(tr2) == e);
}

TEST_CASE("starting on the switching set is refused") {
    CHECK_THROWS_AS(integrate_piecewise(tt::focus_saddle(), {0, 0.5, 0}, 1.0, {}),
                    std::invalid_argument);
}
