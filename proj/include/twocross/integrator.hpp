#pragma once

#include <string>
#include <vector>

#include "twocross/codim2.hpp"
#include "twocross/filippov.hpp"

namespace twocross {

enum class ModeKind { FLOW, SLIDE1, PINNED };

struct TrajectoryState {
    double time = 0;
    Vec3 position;
    ModeKind mode = ModeKind::FLOW;
    Stratum stratum;  // the quadrant (FLOW) or stratum (SLIDE1/PINNED)

    std::string mode_label() const;  // e.g. FLOW_PP, SLIDE_0M, PIN_00
};

struct Event {
    enum Kind { CROSS, SLIDE_ENTER, SLIDE_EXIT, PIN_SIGMA00, UNPIN, STOP } kind;
    double time;
    Vec3 point;
    std::string detail;  // STOP diagnostic, exit side, ...
    static std::string kind_label(Kind k);
};

struct Trajectory {
    std::vector<TrajectoryState> states;
    std::vector<Event> events;
    std::string options_summary;
};

struct IntegrateOptions {
    double step = 1e-3;
    double event_tol = 1e-10;  // bisection window in time
    Regime regime = Regime::fixed_ratio(1.0);  // used for the codim-2 verdict
    int chatter_events = 100;  // >= this many events within 10*event_tol stops
};

/// Event-driven integration with Filippov sliding: RK4 inside quadrants,
/// crossings located by sign-change bracketing plus time bisection, sliding
/// integrated in stratum-intrinsic coordinates with rho monitored for exits,
/// and arrival at the codimension-2 axis pinned when the sliding verdict
/// certifies it (the drift there uses the attracting reduced equilibrium).
Trajectory integrate_piecewise(const PiecewiseField& pw, const Vec3& x0, double tmax,
                               const IntegrateOptions& opts = {});

struct DriftError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// dx3/dt on the codimension-2 axis: the convex-weighted third components at
/// the attracting equilibrium of the reduced system. Throws DriftError when
/// no attracting equilibrium certifies a well-defined drift.
double codim2_drift(const PiecewiseField& pw, double x3, Regime regime);

struct StiffnessError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RegularizedOptions {
    double step = 1e-3;
    double tol = 1e-6;            // full-vs-half-step discrepancy scale
    bool check_stiffness = true;  // discrepancy > 1e3*tol raises StiffnessError
    int store_every = 1;          // keep every n-th state
};

/// Plain fixed-step RK4 on the regularized smooth field.
Trajectory integrate_regularized(const PiecewiseField& pw, const TransitionFunction& phi,
                                 double eps, double eta, const Vec3& x0, double tmax,
                                 const RegularizedOptions& opts = {});

struct ProbeRow {
    double eps, eta;
    double distance;  // max of sqrt(x1^2+x2^2) over the trailing 20% of the run
};

/// Empirical convergence record toward the codimension-2 axis for a ladder of
/// regularization parameters.
std::vector<ProbeRow> convergence_probe(const PiecewiseField& pw,
                                        const TransitionFunction& phi, const Vec3& x0,
                                        const std::vector<std::pair<double, double>>& epsetas,
                                        double tmax, double step = 1e-3);

/// CSV with header t,x1,x2,x3,mode; floats printed with 17 significant digits.
void write_trajectory_csv(const std::string& path, const Trajectory& t);
std::string trajectory_csv(const Trajectory& t);

/// CSV with header t,kind,x1,x2,x3.
void write_events_csv(const std::string& path, const Trajectory& t);
std::string events_csv(const Trajectory& t);

}  // namespace twocross
