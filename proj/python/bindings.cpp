#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "twocross/codim2.hpp"
#include "twocross/integrator.hpp"
#include "twocross/model.hpp"
#include "twocross/quadratic.hpp"

namespace py = pybind11;
using namespace twocross;

namespace {

Vec3 tuple3(py::tuple t) {
    if (t.size() != 3) throw py::value_error("expected a 3-tuple");
    return {t[0].cast<double>(), t[1].cast<double>(), t[2].cast<double>()};
}

Vec2 tuple2(py::tuple t) {
    if (t.size() != 2) throw py::value_error("expected a 2-tuple");
    return {t[0].cast<double>(), t[1].cast<double>()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "2-cross piecewise-smooth vector fields: sliding analysis and simulation";

    py::register_exception<ParseError>(m, "ExpressionParseError");
    py::register_exception<EvalError>(m, "ExpressionEvalError");
    py::register_exception<ModelError>(m, "ModelFileError");
    py::register_exception<DegenerateLambda>(m, "DegenerateLambdaError");
    py::register_exception<DriftError>(m, "DriftUndefinedError");
    py::register_exception<StiffnessError>(m, "StiffStepError");

    py::class_<Vec2>(m, "Vec2")
        .def(py::init<double, double>())
        .def(py::init([](py::tuple t) { return tuple2(t); }))
        .def_readwrite("x", &Vec2::x)
        .def_readwrite("y", &Vec2::y)
        .def("__iter__",
             [](const Vec2& v) { return py::iter(py::make_tuple(v.x, v.y)); })
        .def("__repr__", [](const Vec2& v) {
            return "Vec2(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ")";
        });
    py::implicitly_convertible<py::tuple, Vec2>();

    py::class_<Vec3>(m, "Vec3")
        .def(py::init<double, double, double>())
        .def(py::init([](py::tuple t) { return tuple3(t); }))
        .def_readwrite("x1", &Vec3::x1)
        .def_readwrite("x2", &Vec3::x2)
        .def_readwrite("x3", &Vec3::x3)
        .def("__iter__",
             [](const Vec3& v) { return py::iter(py::make_tuple(v.x1, v.x2, v.x3)); })
        .def("__repr__", [](const Vec3& v) {
            return "Vec3(" + std::to_string(v.x1) + ", " + std::to_string(v.x2) + ", " +
                   std::to_string(v.x3) + ")";
        });
    py::implicitly_convertible<py::tuple, Vec3>();

    py::class_<Mat2>(m, "Mat2")
        .def(py::init<double, double, double, double>())
        .def_readwrite("a11", &Mat2::a11)
        .def_readwrite("a12", &Mat2::a12)
        .def_readwrite("a21", &Mat2::a21)
        .def_readwrite("a22", &Mat2::a22)
        .def("trace", &Mat2::trace)
        .def("det", &Mat2::det);

    py::class_<Expression>(m, "Expression")
        .def("eval", &Expression::eval, py::arg("x1"), py::arg("x2"), py::arg("x3"))
        .def("pretty", &Expression::pretty)
        .def("is_constant", &Expression::is_constant);
    m.def("parse_expression", &parse_expression, py::arg("text"),
          py::arg("params") = std::map<std::string, double>{});

    py::class_<SignPair>(m, "SignPair")
        .def(py::init<int, int>())
        .def_readwrite("s1", &SignPair::s1)
        .def_readwrite("s2", &SignPair::s2)
        .def("label", &SignPair::label);

    py::class_<Stratum>(m, "Stratum")
        .def_readwrite("sig1", &Stratum::sig1)
        .def_readwrite("sig2", &Stratum::sig2)
        .def("codim", &Stratum::codim)
        .def("label", &Stratum::label)
        .def("__repr__", [](const Stratum& s) { return s.label(); });
    m.def("stratum_of", &stratum_of, py::arg("p"), py::arg("tol") = 1e-9);

    py::class_<TransitionFunction> tf(m, "TransitionFunction");
    py::enum_<TransitionFunction::Kind>(tf, "Kind")
        .value("clamped_identity", TransitionFunction::clamped_identity)
        .value("clamped_cubic", TransitionFunction::clamped_cubic);
    tf.def(py::init([](TransitionFunction::Kind k) { return TransitionFunction{k}; }),
           py::arg("kind") = TransitionFunction::clamped_identity)
        .def("__call__", &TransitionFunction::operator())
        .def("deriv", &TransitionFunction::deriv);

    m.def("convex_weight", &convex_weight);

    py::class_<PiecewiseField>(m, "PiecewiseField")
        .def("eval",
             [](const PiecewiseField& pw, const SignPair& s, const Vec3& p) {
                 return pw.eval(s, p);
             })
        .def("all_constant", &PiecewiseField::all_constant);
    m.def("field_from_constants",
          [](const std::map<std::string, std::array<double, 3>>& q) {
              std::array<Vec3, 4> v;
              for (SignPair s : SignPair::all()) {
                  auto it = q.find(s.label());
                  if (it == q.end())
                      throw py::value_error("missing quadrant " + s.label());
                  v[s.index()] = {it->second[0], it->second[1], it->second[2]};
              }
              return PiecewiseField::from_constants(v);
          },
          "Build a constant field from a dict keyed by '++', '+-', '-+', '--'");

    py::class_<ModelFile>(m, "ModelFile")
        .def_readonly("field", &ModelFile::field)
        .def_readonly("params", &ModelFile::params);
    m.def("parse_model", &parse_model);
    m.def("parse_model_text", &parse_model_text, py::arg("text"),
          py::arg("origin") = "<string>");

    py::enum_<Codim1Tag>(m, "Codim1Tag")
        .value("SEWING", Codim1Tag::SEWING)
        .value("SLIDING", Codim1Tag::SLIDING)
        .value("TANGENCY", Codim1Tag::TANGENCY);
    py::class_<Codim1Class>(m, "Codim1Class")
        .def_readonly("tag", &Codim1Class::tag)
        .def_readonly("lie_plus", &Codim1Class::lie_plus)
        .def_readonly("lie_minus", &Codim1Class::lie_minus)
        .def_readonly("stratum", &Codim1Class::stratum);
    m.def("classify_codim1", &classify_codim1, py::arg("pw"), py::arg("p"),
          py::arg("tol") = 1e-9);

    py::class_<SlidingCombination>(m, "SlidingCombination")
        .def_readonly("rho", &SlidingCombination::rho)
        .def_readonly("field_value", &SlidingCombination::field_value);
    m.def("sliding_field_codim1", &sliding_field_codim1, py::arg("pw"), py::arg("p"),
          py::arg("tol") = 1e-9);

    py::enum_<ExitSide>(m, "ExitSide")
        .value("EXIT_PLUS", ExitSide::EXIT_PLUS)
        .value("EXIT_MINUS", ExitSide::EXIT_MINUS);
    m.def("exit_condition", &exit_condition, py::arg("rho"), py::arg("tol") = 1e-9);

    py::class_<Regime> regime(m, "Regime");
    regime.def_static("fixed_ratio", &Regime::fixed_ratio)
        .def_static("to_zero", &Regime::zero)
        .def_static("to_infinity", &Regime::infinity)
        .def("label", &Regime::label);

    m.def("regularized_eval", &regularized_eval, py::arg("pw"), py::arg("phi"),
          py::arg("eps"), py::arg("eta"), py::arg("p"));

    py::enum_<ArgMode>(m, "ArgMode")
        .value("strict", ArgMode::strict)
        .value("full", ArgMode::full);
    py::enum_<WeightScaling>(m, "WeightScaling")
        .value("unnormalized", WeightScaling::unnormalized)
        .value("convex", WeightScaling::convex);
    m.def("blowup_slow_eval", &blowup_slow_eval, py::arg("pw"), py::arg("phi"),
          py::arg("K"), py::arg("q"), py::arg("mode"),
          py::arg("scaling") = WeightScaling::unnormalized);

    py::class_<BilinearEq>(m, "BilinearEq")
        .def(py::init<double, double, double, double>())
        .def_readwrite("c00", &BilinearEq::c00)
        .def_readwrite("c10", &BilinearEq::c10)
        .def_readwrite("c01", &BilinearEq::c01)
        .def_readwrite("c11", &BilinearEq::c11)
        .def("eval", &BilinearEq::eval);
    py::class_<BilinearSystem>(m, "BilinearSystem")
        .def_readwrite("eqx", &BilinearSystem::eqx)
        .def_readwrite("eqy", &BilinearSystem::eqy)
        .def_readwrite("regime", &BilinearSystem::regime);
    m.def("reduced_bilinear_system", &reduced_bilinear_system);
    m.def("bilinear_equilibria", &bilinear_equilibria);

    py::class_<FactoredBilinear>(m, "FactoredBilinear")
        .def_readonly("lambda1", &FactoredBilinear::lambda1)
        .def_readonly("alpha1", &FactoredBilinear::alpha1)
        .def_readonly("beta1", &FactoredBilinear::beta1)
        .def_readonly("delta1", &FactoredBilinear::delta1)
        .def_readonly("lambda2", &FactoredBilinear::lambda2)
        .def_readonly("alpha2", &FactoredBilinear::alpha2)
        .def_readonly("beta2", &FactoredBilinear::beta2)
        .def_readonly("delta2", &FactoredBilinear::delta2);
    m.def("factor_bilinear", &factor_bilinear);
    m.def("reconstruct_bilinear", &reconstruct_bilinear);

    py::class_<UnitProductForm>(m, "UnitProductForm")
        .def_readonly("delta1", &UnitProductForm::delta1)
        .def_readonly("C", &UnitProductForm::C)
        .def_readonly("alpha2", &UnitProductForm::alpha2)
        .def_readonly("beta2", &UnitProductForm::beta2)
        .def_readonly("delta2", &UnitProductForm::delta2)
        .def_readonly("shift_x", &UnitProductForm::shift_x)
        .def_readonly("shift_y", &UnitProductForm::shift_y)
        .def_readonly("time_scale", &UnitProductForm::time_scale);
    m.def("normalize_factored", &normalize_factored);

    py::enum_<EquilibriumType>(m, "EquilibriumType")
        .value("saddle", EquilibriumType::saddle)
        .value("stable_node", EquilibriumType::stable_node)
        .value("unstable_node", EquilibriumType::unstable_node)
        .value("stable_focus", EquilibriumType::stable_focus)
        .value("unstable_focus", EquilibriumType::unstable_focus)
        .value("center_boundary", EquilibriumType::center_boundary)
        .value("degenerate", EquilibriumType::degenerate);
    py::enum_<Stability>(m, "Stability")
        .value("attracting", Stability::attracting)
        .value("repelling", Stability::repelling)
        .value("saddle", Stability::saddle)
        .value("undecided", Stability::undecided);

    m.def("slow_manifold_equilibria", &slow_manifold_equilibria, py::arg("pw"),
          py::arg("x3"), py::arg("K"), py::arg("mode"));
    m.def("slow_jacobian", &slow_jacobian, py::arg("pw"), py::arg("point"), py::arg("x3"),
          py::arg("K"), py::arg("mode"),
          py::arg("scaling") = WeightScaling::unnormalized);

    py::class_<IndicatorEntry>(m, "IndicatorEntry")
        .def_readonly("equilibrium", &IndicatorEntry::equilibrium)
        .def_readonly("jacobian", &IndicatorEntry::jacobian)
        .def_readonly("D", &IndicatorEntry::D);
    m.def("sliding_indicator", &sliding_indicator, py::arg("pw"), py::arg("x3"),
          py::arg("K"), py::arg("mode"));

    m.def("classify_equilibrium", &classify_equilibrium, py::arg("J"),
          py::arg("tol") = 1e-9);
    m.def("ratio_regime_stability", &ratio_regime_stability);

    py::class_<EquilibriumReport>(m, "EquilibriumReport")
        .def_readonly("location", &EquilibriumReport::location)
        .def_readonly("jacobian", &EquilibriumReport::jacobian)
        .def_readonly("trace", &EquilibriumReport::trace)
        .def_readonly("det", &EquilibriumReport::det)
        .def_readonly("type", &EquilibriumReport::type)
        .def_readonly("in_unit_square", &EquilibriumReport::in_unit_square)
        .def_readonly("regime_stability", &EquilibriumReport::regime_stability);

    py::class_<SlidingVerdict> sv(m, "SlidingVerdict");
    py::enum_<SlidingVerdict::Tag>(sv, "Tag")
        .value("SLIDING", SlidingVerdict::SLIDING)
        .value("NO_EQUILIBRIUM", SlidingVerdict::NO_EQUILIBRIUM)
        .value("UNDETERMINED", SlidingVerdict::UNDETERMINED);
    sv.def_readonly("tag", &SlidingVerdict::tag)
        .def_readonly("certificate", &SlidingVerdict::certificate)
        .def_readonly("indicator_values", &SlidingVerdict::indicator_values)
        .def_readonly("method", &SlidingVerdict::method)
        .def_readonly("note", &SlidingVerdict::note);
    m.def("sliding_verdict", &sliding_verdict);

    py::class_<ConstantApproximation>(m, "ConstantApproximation")
        .def_readonly("frozen", &ConstantApproximation::frozen)
        .def_readonly("valid", &ConstantApproximation::valid);
    m.def("constant_approximation", &constant_approximation, py::arg("pw"), py::arg("p0"),
          py::arg("tol") = 1e-9);

    py::class_<QuadSystem>(m, "QuadSystem")
        .def(py::init([](double A, double B, double C, double D, double a, double b,
                         double c, double d) {
                 return QuadSystem{A, B, C, D, a, b, c, d};
             }),
             py::arg("A"), py::arg("B"), py::arg("C"), py::arg("D"), py::arg("a"),
             py::arg("b"), py::arg("c"), py::arg("d"))
        .def_readwrite("A", &QuadSystem::A)
        .def_readwrite("B", &QuadSystem::B)
        .def_readwrite("C", &QuadSystem::C)
        .def_readwrite("D", &QuadSystem::D)
        .def_readwrite("a", &QuadSystem::a)
        .def_readwrite("b", &QuadSystem::b)
        .def_readwrite("c", &QuadSystem::c)
        .def_readwrite("d", &QuadSystem::d)
        .def("rhs", &QuadSystem::rhs);

    py::enum_<CaseTag>(m, "CaseTag")
        .value("I", CaseTag::I)
        .value("II", CaseTag::II)
        .value("III", CaseTag::III)
        .value("IV", CaseTag::IV)
        .value("V", CaseTag::V)
        .value("VI", CaseTag::VI);
    m.def("affine_classify", &affine_classify, py::arg("q"), py::arg("tol") = 1e-9);

    py::class_<AffineMap>(m, "AffineMap")
        .def_readonly("u", &AffineMap::u)
        .def_readonly("v", &AffineMap::v)
        .def_readonly("w", &AffineMap::w)
        .def_readonly("r", &AffineMap::r)
        .def_readonly("sigma", &AffineMap::sigma);
    py::class_<AffineNormalization>(m, "AffineNormalization")
        .def_readonly("tag", &AffineNormalization::tag)
        .def_readonly("Bn", &AffineNormalization::Bn)
        .def_readonly("Cn", &AffineNormalization::Cn)
        .def_readonly("Dn", &AffineNormalization::Dn)
        .def_readonly("map", &AffineNormalization::map)
        .def_readonly("normalized", &AffineNormalization::normalized)
        .def_readonly("note", &AffineNormalization::note);
    m.def("affine_normalize", &affine_normalize, py::arg("q"), py::arg("tol") = 1e-9);

    py::class_<LineFamily>(m, "LineFamily")
        .def_property_readonly("axis",
                               [](const LineFamily& f) {
                                   return f.axis == LineFamily::horizontal ? "horizontal"
                                                                           : "vertical";
                               })
        .def_readonly("level", &LineFamily::level);
    py::class_<QuadEquilibria>(m, "QuadEquilibria")
        .def_readonly("points", &QuadEquilibria::points)
        .def_readonly("family", &QuadEquilibria::family);
    m.def("equilibria_quadratic", &equilibria_quadratic);

    m.def("center_check", &center_check, py::arg("tag"), py::arg("B"), py::arg("D"),
          py::arg("tol") = 1e-10);

    py::class_<BTCoefficients>(m, "BTCoefficients")
        .def_readonly("b00", &BTCoefficients::b00)
        .def_readonly("b01", &BTCoefficients::b01)
        .def_readonly("b20", &BTCoefficients::b20)
        .def_readonly("b11", &BTCoefficients::b11);
    m.def("bt_normal_form", &bt_normal_form, py::arg("C"), py::arg("B1"), py::arg("D1"));

    auto fam = m.def_submodule("bt_family", "the built-in two-parameter demo family");
    fam.def("fields", &bt_family::fields);
    fam.def("xy_system", &bt_family::xy_system);
    fam.def("normal_form", &bt_family::normal_form);
    fam.def("discriminant", &bt_family::discriminant);
    py::enum_<bt_family::Region>(fam, "Region")
        .value("I", bt_family::Region::I)
        .value("S", bt_family::Region::S)
        .value("II", bt_family::Region::II)
        .value("H", bt_family::Region::H)
        .value("III", bt_family::Region::III)
        .value("C_approx", bt_family::Region::C_approx)
        .value("IV", bt_family::Region::IV)
        .value("BT_origin", bt_family::Region::BT_origin);
    fam.def("region",
            [](double a, double b) { return bt_family::region(a, b); });

    py::enum_<ModeKind>(m, "ModeKind")
        .value("FLOW", ModeKind::FLOW)
        .value("SLIDE1", ModeKind::SLIDE1)
        .value("PINNED", ModeKind::PINNED);
    py::class_<TrajectoryState>(m, "TrajectoryState")
        .def_readonly("time", &TrajectoryState::time)
        .def_readonly("position", &TrajectoryState::position)
        .def_readonly("mode", &TrajectoryState::mode)
        .def("mode_label", &TrajectoryState::mode_label);
    py::class_<Event> ev(m, "Event");
    py::enum_<Event::Kind>(ev, "Kind")
        .value("CROSS", Event::CROSS)
        .value("SLIDE_ENTER", Event::SLIDE_ENTER)
        .value("SLIDE_EXIT", Event::SLIDE_EXIT)
        .value("PIN_SIGMA00", Event::PIN_SIGMA00)
        .value("UNPIN", Event::UNPIN)
        .value("STOP", Event::STOP);
    ev.def_readonly("kind", &Event::kind)
        .def_readonly("time", &Event::time)
        .def_readonly("point", &Event::point)
        .def_readonly("detail", &Event::detail);
    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("states", &Trajectory::states)
        .def_readonly("events", &Trajectory::events)
        .def_readonly("options_summary", &Trajectory::options_summary);

    py::class_<IntegrateOptions>(m, "IntegrateOptions")
        .def(py::init<>())
        .def_readwrite("step", &IntegrateOptions::step)
        .def_readwrite("event_tol", &IntegrateOptions::event_tol)
        .def_readwrite("regime", &IntegrateOptions::regime)
        .def_readwrite("chatter_events", &IntegrateOptions::chatter_events);
    m.def("integrate_piecewise", &integrate_piecewise, py::arg("pw"), py::arg("x0"),
          py::arg("tmax"), py::arg("opts") = IntegrateOptions{});

    m.def("codim2_drift", &codim2_drift);

    py::class_<RegularizedOptions>(m, "RegularizedOptions")
        .def(py::init<>())
        .def_readwrite("step", &RegularizedOptions::step)
        .def_readwrite("tol", &RegularizedOptions::tol)
        .def_readwrite("check_stiffness", &RegularizedOptions::check_stiffness)
        .def_readwrite("store_every", &RegularizedOptions::store_every);
    m.def("integrate_regularized", &integrate_regularized, py::arg("pw"), py::arg("phi"),
          py::arg("eps"), py::arg("eta"), py::arg("x0"), py::arg("tmax"),
          py::arg("opts") = RegularizedOptions{});

    py::class_<ProbeRow>(m, "ProbeRow")
        .def_readonly("eps", &ProbeRow::eps)
        .def_readonly("eta", &ProbeRow::eta)
        .def_readonly("distance", &ProbeRow::distance);
    m.def("convergence_probe", &convergence_probe, py::arg("pw"), py::arg("phi"),
          py::arg("x0"), py::arg("epsetas"), py::arg("tmax"), py::arg("step") = 1e-3);

    m.def("trajectory_csv", &trajectory_csv);
    m.def("events_csv", &events_csv);
}
