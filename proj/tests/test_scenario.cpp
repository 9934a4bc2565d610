#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgd/config.hpp"
#include "pgd/presets.hpp"

using namespace pgd;

TEST_CASE("symmetric riemann preset is admissible") {
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    d.validate();
    CHECK(d.check_condition_II().empty());
    // minus side is the upper half-plane, falling
    CHECK(d.eval_side(Side::Minus, 0.3, 0.5).v == doctest::Approx(-1.0));
    CHECK(d.eval_side(Side::Plus, 0.3, -0.5).v == doctest::Approx(1.0));
    CHECK(d.level_set.eval(0.0, 1.0) < 0.0);
}

TEST_CASE("constant state preset uses the comoving admissibility frame") {
    InitialData d = presets::constant_state(1.0, 4.0, 0.6, -0.8);
    d.validate();
    CHECK(d.check_condition_II().empty());
    CHECK(d.frame_shift_u == doctest::Approx(-0.3));
    CHECK(d.frame_shift_v == doctest::Approx(0.4));
    CHECK(d.eval_side(Side::Plus, 0.1, -0.2).u == doctest::Approx(0.0));
    CHECK(d.eval_side(Side::Minus, 0.1, 0.2).rho == doctest::Approx(1.0));
}

TEST_CASE("potential perturbation preset follows the zero level of b + eps f") {
    const double eps = 1e-3;
    InitialData d = presets::potential_perturbation("a^2", eps);
    d.validate();
    CHECK(d.check_condition_II().empty());
    const auto p = d.curve.point(0.3);
    CHECK(p[0] == doctest::Approx(0.3));
    CHECK(p[1] == doctest::Approx(-eps * 0.09));
    // gradient data: both one-sided velocity fields are curl-free
    CHECK(d.curl_defect(-0.5, 0.5, -0.5, 0.5) < 1e-12);
}

TEST_CASE("no-jump preset validates") {
    InitialData d = presets::no_jump("1", "a", "b");
    d.validate();
}

TEST_CASE("config parser handles sections, comments and quoting") {
    const auto cfg = config::Config::parse_string(
        "# leading comment\n"
        "[scenario]\n"
        "kind = riemann   # trailing comment\n"
        "rho = 2.5\n"
        "f = \"a^2 + b # not a comment\"\n");
    CHECK(cfg.get_string("scenario.kind") == "riemann");
    CHECK(cfg.get_number("scenario.rho") == doctest::Approx(2.5));
    CHECK(cfg.get_string("scenario.f") == "a^2 + b # not a comment");
    CHECK(cfg.get_number("scenario.absent", 7.0) == doctest::Approx(7.0));
    CHECK_THROWS_AS(cfg.get_string("scenario.absent"), ConfigError);
    CHECK_THROWS_AS(cfg.get_number("scenario.kind"), ConfigError);
}

TEST_CASE("config parse errors carry origin and line") {
    using Catch = ConfigError;
    CHECK_THROWS_AS(config::Config::parse_string("[scenario\n", "f.cfg"), Catch);
    CHECK_THROWS_AS(config::Config::parse_string("key = 1\n", "f.cfg"), Catch);
    CHECK_THROWS_AS(config::Config::parse_string("[s]\nnovalue\n", "f.cfg"), Catch);
    try {
        config::Config::parse_string("[s]\nbad line\n", "f.cfg");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("f.cfg:2") != std::string::npos);
    }
}

TEST_CASE("overrides replace values and reject malformed keys") {
    auto cfg = config::Config::parse_string("[scenario]\nkind = riemann\nrho = 1\n");
    cfg.set("scenario.rho=3");
    CHECK(cfg.get_number("scenario.rho") == doctest::Approx(3.0));
    cfg.set("discretization.dt=0.5");
    CHECK(cfg.get_number("discretization.dt") == doctest::Approx(0.5));
    CHECK_THROWS_AS(cfg.set("no_dot=1"), ConfigError);
    CHECK_THROWS_AS(cfg.set("missing equals"), ConfigError);
}

TEST_CASE("build_scenario resolves presets and rejects bad input") {
    auto cfg = config::Config::parse_string(
        "[scenario]\nkind = riemann\nrho = 1\nw = 2\n[discretization]\nn_markers = 9\n");
    auto spec = config::build_scenario(cfg);
    CHECK(spec.kind == "riemann");
    CHECK(spec.n_markers == 9);
    CHECK(spec.w == doctest::Approx(2.0));
    spec.data.validate();

    cfg.set("scenario.kind=unheard_of");
    CHECK_THROWS_AS(config::build_scenario(cfg), ConfigError);
    cfg.set("scenario.kind=riemann");
    cfg.set("discretization.dt=-1");
    CHECK_THROWS_AS(config::build_scenario(cfg), ConfigError);
}

TEST_CASE("custom scenarios round-trip through build_scenario") {
    const auto cfg = config::Config::parse_string(
        "[scenario]\nkind = custom\nl_min = -1\nl_max = 1\n"
        "[custom]\n"
        "minus_rho = \"1\"\nminus_u = \"0\"\nminus_v = \"0 - 1\"\n"
        "plus_rho = \"1\"\nplus_u = \"0\"\nplus_v = \"1\"\n"
        "level_set = \"0 - b\"\ncurve_a = \"l\"\ncurve_b = \"0\"\n"
        "topology = open\n"
        "P0 = \"1 + 0 * l\"\n");
    auto spec = config::build_scenario(cfg);
    CHECK(spec.kind == "custom");
    REQUIRE(spec.load.has_value());
    CHECK(spec.load->P0.eval(0.25) == doctest::Approx(1.0));
    CHECK(spec.load->I0.eval(0.25) == doctest::Approx(0.0));
    spec.data.validate();
    CHECK(spec.data.check_condition_II().empty());
}

TEST_CASE("custom scenario with bad expression names the key") {
    const auto cfg = config::Config::parse_string(
        "[scenario]\nkind = custom\n[custom]\n"
        "minus_rho = \"1 +\"\nminus_u = \"0\"\nminus_v = \"0\"\n"
        "plus_rho = \"1\"\nplus_u = \"0\"\nplus_v = \"0\"\n"
        "level_set = \"b\"\ncurve_a = \"l\"\ncurve_b = \"0\"\n");
    try {
        config::build_scenario(cfg);
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("custom.minus_rho") != std::string::npos);
    }
}

TEST_CASE("validate rejects a level set that misses the curve") {
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    d.level_set = FieldExpr::parse("1 - b");
    d.prepare();
    CHECK_THROWS_AS(d.validate(), InadmissibleScenario);
}

TEST_CASE("condition II report flags a receding stream") {
    // both sides moving up: nothing impinges on the front from above
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    d.minus.v = FieldExpr::parse("1");
    d.prepare();
    CHECK(!d.check_condition_II().empty());
}
