#include "twocross/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace twocross {

namespace {

char sig_char(int s) { return s > 0 ? 'P' : (s < 0 ? 'M' : '0'); }

template <typename F>
Vec3 rk4_step(const F& f, const Vec3& p, double h) {
    Vec3 k1 = f(p);
    Vec3 k2 = f(p + k1 * (h / 2));
    Vec3 k3 = f(p + k2 * (h / 2));
    Vec3 k4 = f(p + k3 * h);
    return p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

template <typename F>
Vec2 rk4_step2(const F& f, const Vec2& p, double h) {
    Vec2 k1 = f(p);
    Vec2 k2 = f(p + k1 * (h / 2));
    Vec2 k3 = f(p + k2 * (h / 2));
    Vec2 k4 = f(p + k3 * h);
    return p + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

// Ungated sliding data: usable slightly past the exit boundary while events
// are being located.
struct SlideData {
    double rho;
    Vec3 value;
};

SlideData slide_raw(const PiecewiseField& pw, const Vec3& p, const Stratum& st) {
    Vec3 fp, fm;
    double lp, lm;
    if (st.sig1 == 0) {
        fp = pw.eval(SignPair{+1, st.sig2}, p);
        fm = pw.eval(SignPair{-1, st.sig2}, p);
        lp = fp.x1;
        lm = fm.x1;
    } else {
        fp = pw.eval(SignPair{st.sig1, +1}, p);
        fm = pw.eval(SignPair{st.sig1, -1}, p);
        lp = fp.x2;
        lm = fm.x2;
    }
    double denom = lp - lm;
    if (std::abs(denom) < 1e-12 * (1.0 + fp.norm() + fm.norm()))
        throw std::domain_error("sliding: vanishing denominator (tangency)");
    double rho = lp / denom;
    return {rho, fp * (1.0 - rho) + fm * rho};
}

struct Machine {
    const PiecewiseField& pw;
    const IntegrateOptions& opts;
    Trajectory traj;
    std::vector<double> event_times;
    bool stopped = false;

    Machine(const PiecewiseField& pw_, const IntegrateOptions& o) : pw(pw_), opts(o) {}

    void push_state(double t, const Vec3& p, ModeKind mode, Stratum st) {
        traj.states.push_back({t, p, mode, st});
    }

    void push_event(Event::Kind k, double t, const Vec3& p, const std::string& detail = "") {
        traj.events.push_back({k, t, p, detail});
        event_times.push_back(t);
        if (k == Event::STOP) {
            stopped = true;
            return;
        }
        // chattering guard
        int recent = 0;
        for (auto it = event_times.rbegin(); it != event_times.rend(); ++it) {
            if (t - *it <= 10.0 * opts.event_tol) ++recent;
            else break;
        }
        if (recent >= opts.chatter_events) {
            traj.events.push_back({Event::STOP, t, p, "CHATTER"});
            stopped = true;
        }
    }
};

}  // namespace

std::string TrajectoryState::mode_label() const {
    switch (mode) {
        case ModeKind::FLOW:
            return std::string("FLOW_") + sig_char(stratum.sig1) + sig_char(stratum.sig2);
        case ModeKind::SLIDE1:
            return std::string("SLIDE_") + sig_char(stratum.sig1) + sig_char(stratum.sig2);
        case ModeKind::PINNED: return "PIN_00";
    }
    return "?";
}

std::string Event::kind_label(Kind k) {
    switch (k) {
        case CROSS: return "CROSS";
        case SLIDE_ENTER: return "SLIDE_ENTER";
        case SLIDE_EXIT: return "SLIDE_EXIT";
        case PIN_SIGMA00: return "PIN_SIGMA00";
        case UNPIN: return "UNPIN";
        case STOP: return "STOP";
    }
    return "?";
}

double codim2_drift(const PiecewiseField& pw, double x3, Regime regime) {
    ConstantApproximation ca = constant_approximation(pw, {0, 0, x3});
    SlidingVerdict v = sliding_verdict(ca.frozen, regime);
    if (v.tag != SlidingVerdict::SLIDING)
        throw DriftError("codim2_drift: sliding not certified at x3");
    const EquilibriumReport* attract = nullptr;
    for (const auto& rep : v.certificate)
        if (rep.in_unit_square && rep.regime_stability == Stability::attracting && !attract)
            attract = &rep;
    if (!attract) throw DriftError("codim2_drift: no attracting reduced equilibrium");
    double drift = 0.0;
    for (SignPair s : SignPair::all()) {
        double w = convex_weight(s, attract->location.x, attract->location.y);
        drift += w * pw.eval(s, {0, 0, x3}).x3;
    }
    return drift;
}

Trajectory integrate_piecewise(const PiecewiseField& pw, const Vec3& x0, double tmax,
                               const IntegrateOptions& opts) {
    if (opts.step <= 0) throw std::invalid_argument("integrate_piecewise: step must be > 0");
    Stratum st0 = stratum_of(x0, opts.event_tol);
    if (st0.codim() != 0)
        throw std::invalid_argument(
            "integrate_piecewise: x0 must start inside a quadrant (not within event_tol of "
            "the switching set)");

    Machine m(pw, opts);
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "step=%.17g event_tol=%.17g regime=%s", opts.step,
                      opts.event_tol, opts.regime.label().c_str());
        m.traj.options_summary = buf;
    }

    double t = 0.0;
    Vec3 pos = x0;
    ModeKind mode = ModeKind::FLOW;
    Stratum st = st0;
    m.push_state(t, pos, mode, st);

    auto arrive_sigma00 = [&](double tc, double x3c) {
        Vec3 p{0, 0, x3c};
        try {
            SlidingVerdict v =
                sliding_verdict(constant_approximation(pw, p).frozen, opts.regime);
            if (v.tag == SlidingVerdict::SLIDING) {
                codim2_drift(pw, x3c, opts.regime);  // drift must be well defined to pin
                m.push_event(Event::PIN_SIGMA00, tc, p);
                mode = ModeKind::PINNED;
                st = Stratum{0, 0};
                pos = p;
                t = tc;
                m.push_state(t, pos, mode, st);
                return;
            }
            m.push_event(Event::STOP, tc, p,
                         "codim-2 verdict: " + SlidingVerdict::tag_label(v.tag));
        } catch (const std::exception& e) {
            m.push_event(Event::STOP, tc, p, std::string("codim-2 arrival: ") + e.what());
        }
    };

    while (!m.stopped && t < tmax - 1e-15) {
        double h = std::min(opts.step, tmax - t);

        if (mode == ModeKind::FLOW) {
            SignPair quad{st.sig1, st.sig2};
            auto f = [&](const Vec3& p) { return pw.eval(quad, p); };
            Vec3 pnew = rk4_step(f, pos, h);

            bool c1 = quad.s1 * pnew.x1 < 0 || pnew.x1 == 0.0;
            bool c2 = quad.s2 * pnew.x2 < 0 || pnew.x2 == 0.0;
            if (!c1 && !c2) {
                t += h;
                pos = pnew;
                m.push_state(t, pos, mode, st);
                continue;
            }

            // bisect each flipped coordinate in step time; earliest wins
            auto bisect = [&](int coord) {
                double lo = 0.0, hi = h;
                while (hi - lo > opts.event_tol) {
                    double mid = 0.5 * (lo + hi);
                    Vec3 pm = rk4_step(f, pos, mid);
                    double v = coord == 1 ? pm.x1 : pm.x2;
                    int s = coord == 1 ? quad.s1 : quad.s2;
                    if (s * v > 0) lo = mid;
                    else hi = mid;
                }
                return hi;
            };
            double t1 = c1 ? bisect(1) : 2 * h;
            double t2 = c2 ? bisect(2) : 2 * h;
            double dt = std::min(t1, t2);
            Vec3 pc = rk4_step(f, pos, dt);
            double tc = t + dt;

            if (c1 && c2 && std::abs(t1 - t2) <= opts.event_tol) {
                arrive_sigma00(tc, pc.x3);
                continue;
            }
            int crossed = (t1 <= t2) ? 1 : 2;
            if (crossed == 1) pc.x1 = 0.0;
            else pc.x2 = 0.0;
            double other = crossed == 1 ? pc.x2 : pc.x1;
            if (std::abs(other) <= 1e-9) {
                arrive_sigma00(tc, pc.x3);
                continue;
            }

            Codim1Class cls = classify_codim1(pw, pc);
            if (cls.tag == Codim1Tag::SEWING) {
                m.push_event(Event::CROSS, tc, pc);
                st = crossed == 1 ? Stratum{-quad.s1, quad.s2} : Stratum{quad.s1, -quad.s2};
                pos = pc;
                t = tc;
                m.push_state(t, pos, mode, st);
            } else if (cls.tag == Codim1Tag::SLIDING) {
                m.push_event(Event::SLIDE_ENTER, tc, pc);
                mode = ModeKind::SLIDE1;
                st = cls.stratum;
                pos = pc;
                t = tc;
                m.push_state(t, pos, mode, st);
            } else {
                m.push_event(Event::STOP, tc, pc, "tangency at codimension-1 stratum");
            }
            continue;
        }

        if (mode == ModeKind::SLIDE1) {
            // stratum-intrinsic coordinates: (running switching coordinate, x3)
            const bool on_x1_zero = (st.sig1 == 0);
            auto embed = [&](const Vec2& q) {
                return on_x1_zero ? Vec3{0.0, q.x, q.y} : Vec3{q.x, 0.0, q.y};
            };
            auto fred = [&](const Vec2& q) {
                SlideData sd = slide_raw(pw, embed(q), st);
                return on_x1_zero ? Vec2{sd.value.x2, sd.value.x3}
                                  : Vec2{sd.value.x1, sd.value.x3};
            };
            Vec2 q{on_x1_zero ? pos.x2 : pos.x1, pos.x3};
            int run_sign = on_x1_zero ? st.sig2 : st.sig1;

            Vec2 qnew;
            try {
                qnew = rk4_step2(fred, q, h);
            } catch (const std::exception& e) {
                m.push_event(Event::STOP, t, pos, std::string("sliding arc: ") + e.what());
                continue;
            }

            double rho_new = slide_raw(pw, embed(qnew), st).rho;
            auto exit_new = exit_condition(rho_new);
            bool hit_axis = run_sign * qnew.x < 0 || qnew.x == 0.0;

            if (!exit_new && !hit_axis) {
                t += h;
                q = qnew;
                pos = embed(q);
                m.push_state(t, pos, mode, st);
                continue;
            }

            // locate the first of (rho exit, axis arrival) by time bisection
            auto axis_time = [&]() {
                double lo = 0.0, hi = h;
                while (hi - lo > opts.event_tol) {
                    double mid = 0.5 * (lo + hi);
                    Vec2 qm = rk4_step2(fred, q, mid);
                    if (run_sign * qm.x > 0) lo = mid;
                    else hi = mid;
                }
                return hi;
            };
            auto exit_time = [&]() {
                double lo = 0.0, hi = h;
                while (hi - lo > opts.event_tol) {
                    double mid = 0.5 * (lo + hi);
                    Vec2 qm = rk4_step2(fred, q, mid);
                    double r = slide_raw(pw, embed(qm), st).rho;
                    if (!exit_condition(r)) lo = mid;
                    else hi = mid;
                }
                return hi;
            };

            double t_axis = hit_axis ? axis_time() : 2 * h;
            double t_exit = exit_new ? exit_time() : 2 * h;

            if (t_axis <= t_exit) {
                Vec2 qc = rk4_step2(fred, q, t_axis);
                arrive_sigma00(t + t_axis, qc.y);
            } else {
                Vec2 qc = rk4_step2(fred, q, t_exit);
                double r = slide_raw(pw, embed(qc), st).rho;
                auto side = exit_condition(r);
                if (!side) side = rho_new <= 0.5 ? ExitSide::EXIT_PLUS : ExitSide::EXIT_MINUS;
                Vec3 pc = embed(qc);
                m.push_event(Event::SLIDE_EXIT, t + t_exit, pc,
                             *side == ExitSide::EXIT_PLUS ? "EXIT_PLUS" : "EXIT_MINUS");
                int s = (*side == ExitSide::EXIT_PLUS) ? +1 : -1;
                st = on_x1_zero ? Stratum{s, st.sig2} : Stratum{st.sig1, s};
                mode = ModeKind::FLOW;
                pos = pc;
                t = t + t_exit;
                m.push_state(t, pos, mode, st);
            }
            continue;
        }

        // PINNED: drift along the codimension-2 axis
        try {
            auto fdrift = [&](const Vec3& p) {
                return Vec3{0.0, 0.0, codim2_drift(pw, p.x3, opts.regime)};
            };
            Vec3 pnew = rk4_step(fdrift, pos, h);
            t += h;
            pos = {0.0, 0.0, pnew.x3};
            m.push_state(t, pos, mode, st);
        } catch (const std::exception& e) {
            m.push_event(Event::STOP, t, pos, std::string("pinned drift: ") + e.what());
        }
    }

    if (!m.stopped) {
        double tend = m.traj.states.empty() ? tmax : m.traj.states.back().time;
        m.push_event(Event::STOP, tend, pos, "tmax");
    }
    return std::move(m.traj);
}

Trajectory integrate_regularized(const PiecewiseField& pw, const TransitionFunction& phi,
                                 double eps, double eta, const Vec3& x0, double tmax,
                                 const RegularizedOptions& opts) {
    if (eps <= 0 || eta <= 0)
        throw std::invalid_argument("integrate_regularized: eps, eta must be > 0");
    auto f = [&](const Vec3& p) { return regularized_eval(pw, phi, eps, eta, p); };

    Trajectory traj;
    {
        char buf[160];
        std::snprintf(buf, sizeof buf, "regularized eps=%.17g eta=%.17g step=%.17g", eps,
                      eta, opts.step);
        traj.options_summary = buf;
    }
    double t = 0.0;
    Vec3 pos = x0;
    traj.states.push_back({t, pos, ModeKind::FLOW, stratum_of(pos, 0.0)});
    long n = 0;
    while (t < tmax - 1e-15) {
        double h = std::min(opts.step, tmax - t);
        Vec3 full = rk4_step(f, pos, h);
        if (opts.check_stiffness) {
            Vec3 half = rk4_step(f, rk4_step(f, pos, h / 2), h / 2);
            Vec3 d = full - half;
            double disc = std::max({std::abs(d.x1), std::abs(d.x2), std::abs(d.x3)});
            if (disc > 1e3 * opts.tol) {
                char buf[200];
                std::snprintf(buf, sizeof buf,
                              "step %.3g too large for stiffness (discrepancy %.3g); the "
                              "system is stiff of order 1/min(eps,eta); reduce step below "
                              "%.3g",
                              h, disc, 0.5 * std::min(eps, eta));
                throw StiffnessError(buf);
            }
        }
        t += h;
        pos = full;
        if (++n % opts.store_every == 0 || t >= tmax - 1e-15)
            traj.states.push_back({t, pos, ModeKind::FLOW, stratum_of(pos, 0.0)});
    }
    traj.events.push_back({Event::STOP, t, pos, "tmax"});
    return traj;
}

std::vector<ProbeRow> convergence_probe(const PiecewiseField& pw,
                                        const TransitionFunction& phi, const Vec3& x0,
                                        const std::vector<std::pair<double, double>>& epsetas,
                                        double tmax, double step) {
    std::vector<ProbeRow> rows;
    for (auto [eps, eta] : epsetas) {
        RegularizedOptions o;
        o.step = step;
        Trajectory tr = integrate_regularized(pw, phi, eps, eta, x0, tmax, o);
        double d = 0.0;
        for (const auto& s : tr.states)
            if (s.time >= 0.8 * tmax) d = std::max(d, std::hypot(s.position.x1, s.position.x2));
        rows.push_back({eps, eta, d});
    }
    return rows;
}

namespace {

std::string g17(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

std::string trajectory_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "t,x1,x2,x3,mode\n";
    for (const auto& s : t.states)
        os << g17(s.time) << ',' << g17(s.position.x1) << ',' << g17(s.position.x2) << ','
           << g17(s.position.x3) << ',' << s.mode_label() << '\n';
    return os.str();
}

std::string events_csv(const Trajectory& t) {
    std::ostringstream os;
    os << "t,kind,x1,x2,x3\n";
    for (const auto& e : t.events)
        os << g17(e.time) << ',' << Event::kind_label(e.kind) << ',' << g17(e.point.x1)
           << ',' << g17(e.point.x2) << ',' << g17(e.point.x3) << '\n';
    return os.str();
}

void write_trajectory_csv(const std::string& path, const Trajectory& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << trajectory_csv(t);
}

void write_events_csv(const std::string& path, const Trajectory& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << events_csv(t);
}

}  // namespace twocross
