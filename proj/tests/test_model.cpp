#include "doctest.h"
#include "helpers.hpp"
#include "twocross/model.hpp"

using namespace twocross;

#ifndef TWOCROSS_MODELS_DIR
#define TWOCROSS_MODELS_DIR "models"
#endif

TEST_CASE("model text parses constant triples") {
    ModelFile mf = parse_model_text(
        "# four constant triples\n"
        "field ++ : -1, -1, 1\n"
        "field +- : -1,  1, 1\n"
        "field -+ :  1, -1, 1\n"
        "field -- :  1,  1, 1\n");
    CHECK(mf.field.all_constant());
    Vec3 v = mf.field.eval({+1, -1}, {0, 0, 0});
    CHECK(v.x1 == -1.0);
    CHECK(v.x2 == 1.0);
}

TEST_CASE("model errors name the offending quadrant or line") {
    CHECK_THROWS_WITH_AS(parse_model_text("field ++ : 1,1,1\n"
                                          "field +- : 1,1,1\n"
                                          "field -+ : 1,1,1\n"),
                         doctest::Contains("missing quadrant `--`"), ModelError);
    CHECK_THROWS_WITH_AS(parse_model_text("field ++ : 1,1,1\nfield ++ : 2,2,2\n"),
                         doctest::Contains("duplicate"), ModelError);
    CHECK_THROWS_WITH_AS(parse_model_text("field ++ : 1,«,1\n"), doctest::Contains(":1:"),
                         ModelError);
    CHECK_THROWS_AS(parse_model_text("bogus line\n"), ModelError);
}

TEST_CASE("parameters feed the field expressions") {
    ModelFile mf = parse_model_text(
        "param alpha = -0.06\n"
        "param beta = 0.04\n"
        "field ++ :  5/36 - alpha/4, -1/18 - beta/4, 1\n"
        "field +- : -13/36 - alpha/4, -1/18 - beta/4, 1\n"
        "field -+ : -13/36 - alpha/4, -1/18 - beta/4, 1\n"
        "field -- :  5/36 - alpha/4,  35/18 - beta/4, 1\n");
    Vec3 v = mf.field.eval({+1, +1}, {0, 0, 0});
    CHECK(v.x1 == doctest::Approx(277.0 / 1800).epsilon(1e-15));
    CHECK(v.x2 == doctest::Approx(-59.0 / 900).epsilon(1e-15));
    CHECK(mf.params.at("alpha") == -0.06);
}

TEST_CASE("shipped model files parse and match the built-in fields") {
    std::string dir = TWOCROSS_MODELS_DIR;
    ModelFile att = parse_model(dir + "/uniform_attractor.model");
    Vec3 a = att.field.eval({-1, +1}, {0, 0, 0});
    CHECK(a.x1 == 1.0);
    CHECK(a.x2 == -1.0);

    ModelFile cubic = parse_model(dir + "/cubic_fields.model");
    Vec3 c = cubic.field.eval({+1, +1}, {0, 0, 0});
    CHECK(c.x1 == doctest::Approx(-1));
    CHECK(c.x2 == doctest::Approx(-1));
    CHECK(c.x3 == doctest::Approx(0));
    CHECK_FALSE(cubic.field.all_constant());

    ModelFile bt = parse_model(dir + "/bt_family.model");
    Vec3 b = bt.field.eval({+1, +1}, {0, 0, 0});
    CHECK(b.x1 == doctest::Approx(5.0 / 36).epsilon(1e-15));

    ModelFile fs = parse_model(dir + "/focus_saddle.model");
    Vec3 f = fs.field.eval({-1, -1}, {0, 0, 0});
    CHECK(f.x2 == doctest::Approx(1741.0 / 900).epsilon(1e-15));

    ModelFile rad = parse_model(dir + "/radical_node.model");
    PiecewiseField ref = tt::radical_node();
    for (SignPair s : SignPair::all()) {
        Vec3 got = rad.field.eval(s, {0, 0, 0});
        Vec3 want = ref.eval(s, {0, 0, 0});
        CHECK(got.x1 == doctest::Approx(want.x1).epsilon(1e-15));
        CHECK(got.x2 == doctest::Approx(want.x2).epsilon(1e-15));
        CHECK(got.x3 == want.x3);
    }

    CHECK_THROWS_AS(parse_model(dir + "/does_not_exist.model"), ModelError);
}
