#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "twocross/codim2.hpp"
#include "twocross/integrator.hpp"
#include "twocross/model.hpp"
#include "twocross/quadratic.hpp"

using namespace twocross;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitUndetermined = 2;

std::string g17(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Vec3 parse_triple(const std::string& s) {
    Vec3 v;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> v.x1 >> c1 >> v.x2 >> c2 >> v.x3) || c1 != ',' || c2 != ',')
        throw std::runtime_error("expected three comma-separated numbers, got `" + s + "`");
    return v;
}

Regime parse_regime(const std::string& s) {
    if (s == "to-zero") return Regime::zero();
    if (s == "to-inf" || s == "to-infinity") return Regime::infinity();
    if (s.rfind("k=", 0) == 0) {
        try {
            return Regime::fixed_ratio(std::stod(s.substr(2)));
        } catch (const std::exception&) {
        }
    }
    throw std::runtime_error("regime must be k=<value>, to-zero or to-inf");
}

ArgMode parse_mode(const std::string& s) {
    if (s == "strict") return ArgMode::strict;
    if (s == "full" || s == "paper") return ArgMode::full;
    throw std::runtime_error("mode must be strict or full");
}

void print_equilibrium_block(const SlidingVerdict& v) {
    std::cout << "equilibria: " << v.certificate.size() << "\n";
    for (size_t i = 0; i < v.certificate.size(); ++i) {
        const auto& r = v.certificate[i];
        std::cout << "equilibrium_" << i + 1 << ": x=" << g17(r.location.x)
                  << " y=" << g17(r.location.y) << " type=" << to_string(r.type)
                  << " stability=" << to_string(r.regime_stability)
                  << " in_box=" << (r.in_unit_square ? "yes" : "no") << "\n";
        std::cout << "indicator_" << i + 1 << ": " << g17(v.indicator_values[i]) << "\n";
    }
}

int report_verdict(const PiecewiseField& raw, double x3, Regime regime, ArgMode mode,
                   double K) {
    PiecewiseField pf = raw;
    bool frozen = false, valid = true;
    if (!raw.all_constant()) {
        ConstantApproximation ca = constant_approximation(raw, {0, 0, x3});
        pf = ca.frozen;
        frozen = true;
        valid = ca.valid;
    }
    SlidingVerdict v;
    try {
        v = sliding_verdict(pf, regime);
    } catch (const std::invalid_argument& e) {
        v.tag = SlidingVerdict::UNDETERMINED;
        v.regime = regime;
        v.method = "none";
        v.note = std::string("hypotheses fail: ") + e.what();
    }
    std::cout << "x3: " << g17(x3) << "\n";
    std::cout << "regime: " << regime.label() << "\n";
    std::cout << "mode: " << (mode == ArgMode::strict ? "strict" : "full") << "\n";
    std::cout << "K: " << g17(K) << "\n";
    std::cout << "scaling: unnormalized\n";
    std::cout << "frozen: " << (frozen ? (valid ? "yes" : "yes (transversality flag failed)")
                                       : "no")
              << "\n";
    std::cout << "verdict: " << SlidingVerdict::tag_label(v.tag) << "\n";
    std::cout << "method: " << (frozen ? "constant_freeze+" : "") << v.method << "\n";
    if (!v.note.empty()) std::cout << "note: " << v.note << "\n";
    print_equilibrium_block(v);

    auto ind = sliding_indicator(pf, x3, K, mode);
    bool certifies = false;
    for (size_t i = 0; i < ind.size(); ++i) {
        std::cout << "indicator_D_" << i + 1 << ": " << g17(ind[i].D) << " at x="
                  << g17(ind[i].equilibrium.x) << " y=" << g17(ind[i].equilibrium.y) << "\n";
        if (ind[i].D != 0.0) certifies = true;
    }
    std::cout << "indicator_certifies: " << (certifies ? "yes" : "no")
              << " (indicator_sign rule, eta = K*eps curves)\n";
    return v.tag == SlidingVerdict::UNDETERMINED ? kExitUndetermined : kExitOk;
}

int cmd_classify(const ModelFile& mf, const Vec3& p, double tol, Regime regime,
                 ArgMode mode, double K) {
    Stratum st = stratum_of(p, tol);
    std::cout << "point: " << g17(p.x1) << "," << g17(p.x2) << "," << g17(p.x3) << "\n";
    std::cout << "stratum: " << st.label() << "\n";
    std::cout << "codimension: " << st.codim() << "\n";
    if (st.codim() == 0) {
        Vec3 f = mf.field.eval(SignPair{st.sig1, st.sig2}, p);
        std::cout << "field: " << g17(f.x1) << "," << g17(f.x2) << "," << g17(f.x3) << "\n";
        return kExitOk;
    }
    if (st.codim() == 1) {
        Codim1Class c = classify_codim1(mf.field, p, tol);
        const char* tag = c.tag == Codim1Tag::SEWING
                              ? "SEWING"
                              : (c.tag == Codim1Tag::SLIDING ? "SLIDING" : "TANGENCY");
        std::cout << "tag: " << tag << "\n";
        std::cout << "lie_plus: " << g17(c.lie_plus) << "\n";
        std::cout << "lie_minus: " << g17(c.lie_minus) << "\n";
        if (c.tag == Codim1Tag::SLIDING) {
            SlidingCombination s = sliding_field_codim1(mf.field, p, tol);
            std::cout << "rho: " << g17(s.rho) << "\n";
            std::cout << "sliding_field: " << g17(s.field_value.x1) << ","
                      << g17(s.field_value.x2) << "," << g17(s.field_value.x3) << "\n";
        }
        return c.tag == Codim1Tag::TANGENCY ? kExitUndetermined : kExitOk;
    }
    return report_verdict(mf.field, p.x3, regime, mode, K);
}

int cmd_reduce(const ModelFile& mf, Regime regime) {
    BilinearSystem b = reduced_bilinear_system(mf.field, regime);
    auto line = [](const char* k, const BilinearEq& e) {
        std::cout << k << ": " << g17(e.c00) << " " << g17(e.c10) << " " << g17(e.c01)
                  << " " << g17(e.c11) << "\n";
    };
    std::cout << "regime: " << regime.label() << "\n";
    line("eqx_c00_c10_c01_c11", b.eqx);
    line("eqy_c00_c10_c01_c11", b.eqy);
    try {
        FactoredBilinear f = factor_bilinear(b);
        std::cout << "lambda1: " << g17(f.lambda1) << "\nalpha1: " << g17(f.alpha1)
                  << "\nbeta1: " << g17(f.beta1) << "\ndelta1: " << g17(f.delta1) << "\n";
        std::cout << "lambda2: " << g17(f.lambda2) << "\nalpha2: " << g17(f.alpha2)
                  << "\nbeta2: " << g17(f.beta2) << "\ndelta2: " << g17(f.delta2) << "\n";
        UnitProductForm u = normalize_factored(f);
        std::cout << "unit_delta1: " << g17(u.delta1) << "\nunit_C: " << g17(u.C)
                  << "\nunit_alpha2: " << g17(u.alpha2) << "\nunit_beta2: " << g17(u.beta2)
                  << "\nunit_delta2: " << g17(u.delta2) << "\n";
        std::cout << "unit_shift: " << g17(u.shift_x) << "," << g17(u.shift_y)
                  << "\nunit_time_scale: " << g17(u.time_scale) << "\n";
    } catch (const DegenerateLambda& e) {
        std::cout << "factored: degenerate (" << e.what() << ")\n";
    }
    return kExitOk;
}

int cmd_normal_form(const ModelFile& mf) {
    BilinearSystem b = reduced_bilinear_system(mf.field, Regime::fixed_ratio(1.0));
    auto to_quad = [](const BilinearEq& x, const BilinearEq& y) {
        if (x.c11 == 0.0 || y.c11 == 0.0)
            throw DegenerateLambda("xy coefficient vanishes; system is not genuinely quadratic");
        QuadSystem q;
        q.A = x.c11;
        q.a = -x.c01 / x.c11;
        q.b = -x.c10 / x.c11;
        q.B = x.c01 * x.c10 / x.c11 - x.c00;
        q.C = y.c11;
        q.c = -y.c01 / y.c11;
        q.d = -y.c10 / y.c11;
        q.D = y.c01 * y.c10 / y.c11 - y.c00;
        return q;
    };
    QuadSystem q;
    try {
        q = to_quad(b.eqx, b.eqy);
    } catch (const DegenerateLambda& e) {
        std::cout << "case: degenerate\nnote: " << e.what() << "\n";
        return kExitUndetermined;
    }
    AffineNormalization n = affine_normalize(q);
    std::cout << "case: " << to_string(n.tag) << "\n";
    std::cout << "Bn: " << g17(n.Bn) << "\nCn: " << g17(n.Cn) << "\nDn: " << g17(n.Dn)
              << "\n";
    std::cout << "map_u: " << g17(n.map.u) << "\nmap_v: " << g17(n.map.v)
              << "\nmap_w: " << g17(n.map.w) << "\nmap_r: " << g17(n.map.r)
              << "\nmap_sigma: " << g17(n.map.sigma) << "\n";
    if (!n.note.empty()) std::cout << "note: " << n.note << "\n";
    if (n.tag == CaseTag::I) {
        double C = n.Cn;
        bool ok = std::abs(C) > 1e-12 && std::abs(C - 1) > 1e-12 && std::abs(C + 1) > 1e-12;
        if (ok) {
            double op = 1.0 + C;
            double B1 = n.Bn - C * C / (op * op);
            double D1 = n.Dn - C / (op * op);
            BTCoefficients bt = bt_normal_form(C, B1, D1);
            std::cout << "B1: " << g17(B1) << "\nD1: " << g17(D1) << "\n";
            std::cout << "bt_b00: " << g17(bt.b00) << "\nbt_b01: " << g17(bt.b01)
                      << "\nbt_b20: " << g17(bt.b20) << "\nbt_b11: " << g17(bt.b11) << "\n";
        } else {
            std::cout << "bt: not applicable (C in {-1,0,1})\n";
        }
    }
    return kExitOk;
}

struct GridAxis {
    double lo = 0, hi = 0;
    int n = 1;
    double at(int i) const { return n <= 1 ? lo : lo + (hi - lo) * i / (n - 1); }
};

GridAxis parse_axis(const std::string& s) {
    GridAxis g;
    char c1, c2;
    std::istringstream is(s);
    if (!(is >> g.lo >> c1 >> g.hi >> c2 >> g.n) || c1 != ':' || c2 != ':' || g.n < 1)
        throw std::runtime_error("malformed grid axis `" + s + "` (want lo:hi:n)");
    return g;
}

int cmd_regions(const std::string& grid, const std::string& out_path, int threads) {
    auto comma = grid.find(',');
    if (comma == std::string::npos)
        throw std::runtime_error("malformed grid (want a0:a1:n,b0:b1:m)");
    GridAxis ga = parse_axis(grid.substr(0, comma));
    GridAxis gb = parse_axis(grid.substr(comma + 1));
    for (double v : {ga.lo, ga.hi, gb.lo, gb.hi})
        if (std::abs(v) > 0.5)
            throw std::runtime_error("grid out of range: |alpha|, |beta| must be <= 0.5");

    const int total = ga.n * gb.n;
    std::vector<std::string> rows(total);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (;;) {
            int idx = next.fetch_add(1);
            if (idx >= total) return;
            int i = idx / gb.n, j = idx % gb.n;
            double a = ga.at(i), b = gb.at(j);
            bt_family::Region r = bt_family::region(a, b);
            rows[idx] = g17(a) + "," + g17(b) + "," + bt_family::to_string(r);
        }
    };
    int nthreads = std::max(1, threads);
    std::vector<std::thread> pool;
    for (int k = 0; k < nthreads; ++k) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out_path);
        os = &file;
    }
    (*os) << "alpha,beta,region\n";
    for (const std::string& r : rows) (*os) << r << "\n";
    return kExitOk;
}

int cmd_simulate(const ModelFile& mf, const Vec3& x0, double tmax, double step,
                 double event_tol, Regime regime, const std::string& out,
                 const std::string& events_out) {
    IntegrateOptions opts;
    opts.step = step;
    opts.event_tol = event_tol;
    opts.regime = regime;
    Trajectory tr = integrate_piecewise(mf.field, x0, tmax, opts);
    if (!out.empty()) write_trajectory_csv(out, tr);
    std::string ev = events_out;
    if (ev.empty() && !out.empty()) {
        ev = out;
        auto dot = ev.rfind('.');
        ev = (dot == std::string::npos ? ev : ev.substr(0, dot)) + "_events.csv";
    }
    if (!ev.empty()) write_events_csv(ev, tr);
    std::cout << "options: " << tr.options_summary << "\n";
    std::cout << "states: " << tr.states.size() << "\n";
    std::cout << "events: " << tr.events.size() << "\n";
    for (size_t i = 0; i < tr.events.size(); ++i) {
        const Event& e = tr.events[i];
        std::cout << "event_" << i + 1 << ": t=" << g17(e.time) << " kind="
                  << Event::kind_label(e.kind) << " x=" << g17(e.point.x1) << ","
                  << g17(e.point.x2) << "," << g17(e.point.x3);
        if (!e.detail.empty()) std::cout << " detail=" << e.detail;
        std::cout << "\n";
    }
    if (!out.empty()) std::cout << "trajectory_csv: " << out << "\n";
    if (!ev.empty()) std::cout << "events_csv: " << ev << "\n";
    return kExitOk;
}

int cmd_probe(const ModelFile& mf, const std::string& eps_list, const Vec3& x0, double tmax,
              double step, const std::string& out) {
    std::vector<std::pair<double, double>> ladder;
    std::istringstream is(eps_list);
    std::string item;
    while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        try {
            if (colon == std::string::npos) {
                double e = std::stod(item);
                ladder.emplace_back(e, e);
            } else {
                ladder.emplace_back(std::stod(item.substr(0, colon)),
                                    std::stod(item.substr(colon + 1)));
            }
        } catch (const std::exception&) {
            throw std::runtime_error("malformed eps list entry `" + item + "`");
        }
    }
    if (ladder.empty()) throw std::runtime_error("empty eps list");
    auto rows = convergence_probe(mf.field, TransitionFunction{}, x0, ladder, tmax, step);
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!out.empty()) {
        file.open(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open " + out);
        os = &file;
    }
    (*os) << "eps,eta,distance\n";
    for (const auto& r : rows)
        (*os) << g17(r.eps) << "," << g17(r.eta) << "," << g17(r.distance) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Analysis and simulation of piecewise-smooth vector fields on R^3 with two "
        "switching planes: codimension-1/2 sliding classification, reduced bilinear "
        "systems, quadratic normal forms and event-driven integration"};
    app.require_subcommand(1);

    std::string model_path, point_s, regime_s = "k=1", mode_s = "strict";
    std::string grid_s, out_s, events_out_s, x0_s, eps_list_s;
    double x3 = 0.0, K = 1.0, tol = 1e-9, tmax = 10.0, step = 1e-3, event_tol = 1e-10;
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 4;

    auto add_model = [&](CLI::App* c) {
        c->add_option("--model", model_path, "model file")->required();
    };

    CLI::App* classify = app.add_subcommand("classify", "classify a point of the switching set");
    add_model(classify);
    classify->add_option("--point", point_s, "x1,x2,x3")->required();
    classify->add_option("--tol", tol, "stratum zero tolerance");
    classify->add_option("--regime", regime_s, "k=<v>|to-zero|to-inf");
    classify->add_option("--mode", mode_s, "strict|full");
    classify->add_option("--K", K, "regularization curve eta = K*eps");

    CLI::App* reduce = app.add_subcommand("reduce", "reduced bilinear system and factored forms");
    add_model(reduce);
    reduce->add_option("--regime", regime_s, "k=<v>|to-zero|to-inf");

    CLI::App* verdict = app.add_subcommand("verdict", "codimension-2 sliding verdict");
    add_model(verdict);
    verdict->add_option("--regime", regime_s, "k=<v>|to-zero|to-inf");
    verdict->add_option("--x3", x3, "axis point");
    verdict->add_option("--mode", mode_s, "strict|full");
    verdict->add_option("--K", K, "regularization curve eta = K*eps");

    CLI::App* nform = app.add_subcommand("normal-form", "affine case and BT coefficients");
    add_model(nform);

    CLI::App* regions = app.add_subcommand("regions", "bifurcation regions of the built-in family");
    regions->add_option("--grid", grid_s, "a0:a1:n,b0:b1:m")->required();
    regions->add_option("--out", out_s, "output CSV (default stdout)");
    regions->add_option("--threads", threads, "worker threads");

    CLI::App* simulate = app.add_subcommand("simulate", "event-driven piecewise integration");
    add_model(simulate);
    simulate->add_option("--x0", x0_s, "x1,x2,x3")->required();
    simulate->add_option("--tmax", tmax, "time horizon")->required();
    simulate->add_option("--step", step, "RK4 step");
    simulate->add_option("--event-tol", event_tol, "bisection window in time");
    simulate->add_option("--regime", regime_s, "regime for the codim-2 verdict");
    simulate->add_option("--out", out_s, "trajectory CSV path");
    simulate->add_option("--events-out", events_out_s, "events CSV path");

    CLI::App* probe = app.add_subcommand("probe", "regularized convergence probe");
    add_model(probe);
    probe->add_option("--eps-list", eps_list_s, "e or e:eta, comma-separated")->required();
    probe->add_option("--x0", x0_s, "x1,x2,x3")->required();
    probe->add_option("--tmax", tmax, "time horizon")->required();
    probe->add_option("--step", step, "RK4 step");
    probe->add_option("--out", out_s, "output CSV (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (regions->parsed()) return cmd_regions(grid_s, out_s, threads);

        ModelFile mf = parse_model(model_path);
        std::cout << "model: " << model_path << "\n";
        if (classify->parsed())
            return cmd_classify(mf, parse_triple(point_s), tol, parse_regime(regime_s),
                                parse_mode(mode_s), K);
        if (reduce->parsed()) return cmd_reduce(mf, parse_regime(regime_s));
        if (verdict->parsed())
            return report_verdict(mf.field, x3, parse_regime(regime_s), parse_mode(mode_s), K);
        if (nform->parsed()) return cmd_normal_form(mf);
        if (simulate->parsed())
            return cmd_simulate(mf, parse_triple(x0_s), tmax, step, event_tol,
                                parse_regime(regime_s), out_s, events_out_s);
        if (probe->parsed())
            return cmd_probe(mf, eps_list_s, parse_triple(x0_s), tmax, step, out_s);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
