#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pgd/characteristics.hpp"
#include "pgd/front_tracker.hpp"
#include "pgd/presets.hpp"

using namespace pgd;
namespace ch = pgd::characteristics;

TEST_CASE("flow map streams linearly with the initial velocity") {
    InitialData d = presets::no_jump("1", "a", "2 * b");
    const Vec2 p = ch::flow_map(d, Side::Minus, 0.5, -0.25, 2.0);
    CHECK(p.x() == doctest::Approx(0.5 + 2.0 * 0.5));
    CHECK(p.y() == doctest::Approx(-0.25 + 2.0 * (-0.5)));
}

TEST_CASE("jacobian and transported density for an expanding field") {
    InitialData d = presets::no_jump("1", "a", "0");
    const double t = 0.7;
    CHECK(ch::jacobian_D(d, Side::Plus, 0.1, 0.2, t) == doctest::Approx(1.0 + t));
    CHECK(ch::transported_density(d, Side::Plus, 0.1, 0.2, t) ==
          doctest::Approx(1.0 / (1.0 + t)));
}

TEST_CASE("compressing field focuses into a caustic at t = 1") {
    InitialData d = presets::no_jump("1", "0 - a", "0");
    CHECK(ch::jacobian_D(d, Side::Minus, 0.3, 0.0, 0.5) == doctest::Approx(0.5));
    CHECK_THROWS_AS(ch::transported_density(d, Side::Minus, 0.3, 0.0, 1.0), CausticError);
}

TEST_CASE("flow jacobian matches the analytic matrix") {
    InitialData d = presets::no_jump("1", "a + b", "b");
    const auto M = ch::flow_jacobian(d, Side::Minus, 0.0, 0.0, 2.0);
    CHECK(M(0, 0) == doctest::Approx(3.0));
    CHECK(M(0, 1) == doctest::Approx(2.0));
    CHECK(M(1, 0) == doctest::Approx(0.0));
    CHECK(M(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("preimage inverts the flow map") {
    InitialData d = presets::no_jump("1", "sin(a)", "cos(b)");
    const double t = 0.4;
    const Vec2 q0{0.3, -0.2};
    const Vec2 x = ch::flow_map(d, Side::Plus, q0.x(), q0.y(), t);
    const Vec2 q = ch::preimage(d, Side::Plus, x.x(), x.y(), t, Vec2{0.0, 0.0});
    CHECK(q.x() == doctest::Approx(q0.x()).epsilon(1e-9));
    CHECK(q.y() == doctest::Approx(q0.y()).epsilon(1e-9));
}

TEST_CASE("crossing time against the stationary symmetric front") {
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    FrontTracker tr(d);
    const FrontHistory hist = tr.run(tr.initialize(17), 0.01, 0.5);

    // upper-side particle at height 0.2 falls with v = -1: crossing at tau = 0.2
    const auto c = ch::crossing_time(d, hist, 0.0, 0.2, 0.5);
    CHECK(c.tau0 == doctest::Approx(0.2).epsilon(1e-6));
    CHECK(c.l0 == doctest::Approx(0.0).epsilon(1e-6));

    // too high to reach the front within the horizon
    const auto far = ch::crossing_time(d, hist, 0.0, 0.9, 0.5);
    CHECK(std::isinf(far.tau0));
}

TEST_CASE("eulerian map rides the absorbing marker after crossing") {
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    FrontTracker tr(d);
    const FrontHistory hist = tr.run(tr.initialize(17), 0.01, 0.5);

    // free streaming before the crossing
    const Vec2 before = ch::eulerian_map_Lt(d, hist, 0.1, 0.3, 0.2);
    CHECK(before.x() == doctest::Approx(0.1));
    CHECK(before.y() == doctest::Approx(0.1));

    // absorbed at tau = 0.3, front stays at y = 0
    const Vec2 after = ch::eulerian_map_Lt(d, hist, 0.1, 0.3, 0.45);
    CHECK(after.x() == doctest::Approx(0.1).epsilon(1e-6));
    CHECK(after.y() == doctest::Approx(0.0).epsilon(1e-6));
}
