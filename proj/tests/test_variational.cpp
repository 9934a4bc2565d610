#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pgd/front_tracker.hpp"
#include "pgd/presets.hpp"
#include "pgd/variational.hpp"

using namespace pgd;
namespace va = pgd::variational;

TEST_CASE("smooth potential value and gradient") {
    const auto pot = va::Potential::smooth(FieldExpr::parse("a^2 + 3 * b"));
    CHECK(pot.value(2.0, 1.0) == doctest::Approx(7.0));
    const Vec2 g = pot.gradient(2.0, 1.0);
    CHECK(g.x() == doctest::Approx(4.0));
    CHECK(g.y() == doctest::Approx(3.0));
    CHECK(!pot.is_piecewise());
}

TEST_CASE("perturbation potential switches branches across its curve") {
    const double eps = 1e-3;
    const auto pot = va::Potential::perturbation(FieldExpr::parse("a^2"), eps);
    CHECK(pot.is_piecewise());
    CHECK(pot.value(0.5, 0.2) == doctest::Approx(0.0));
    CHECK(pot.value(0.5, -0.2) == doctest::Approx(-0.2 + eps * 0.25));
    CHECK(pot.curve_b(0.5) == doctest::Approx(-eps * 0.25).epsilon(1e-10));
    const Vec2 g = pot.gradient(0.5, -0.2);
    CHECK(g.x() == doctest::Approx(eps * 1.0));
    CHECK(g.y() == doctest::Approx(1.0));
}

TEST_CASE("quadratic-cost minimization with a flat potential") {
    const auto pot = va::Potential::smooth(FieldExpr::parse("0"));
    const auto ms = va::hopf_lax(pot, 0.5, 0.3, -0.1, {-2, 2, -2, 2}, 129);
    REQUIRE(ms.minimizers.size() == 1);
    CHECK(ms.minimizers[0].x() == doctest::Approx(0.3).epsilon(1e-6));
    CHECK(ms.minimizers[0].y() == doctest::Approx(-0.1).epsilon(1e-6));
    CHECK(std::fabs(ms.psi) < 1e-12);
}

TEST_CASE("symmetric collision potential has two minimizers on the axis") {
    const auto pot = va::Potential::piecewise(FieldExpr::parse("b"), FieldExpr::parse("0 - b"),
                                              FieldExpr::parse("b"));
    const double t = 0.5;
    const auto ms = va::hopf_lax(pot, t, 0.0, 0.0, {-2, 2, -2, 2}, 257);
    REQUIRE(ms.minimizers.size() == 2);
    CHECK(ms.psi == doctest::Approx(-t / 2.0).epsilon(1e-8));
    const double lo = std::min(ms.minimizers.front().y(), ms.minimizers.back().y());
    const double hi = std::max(ms.minimizers.front().y(), ms.minimizers.back().y());
    CHECK(lo == doctest::Approx(-t).epsilon(1e-5));
    CHECK(hi == doctest::Approx(t).epsilon(1e-5));
}

TEST_CASE("minimizer escaping the search box is reported") {
    const auto pot = va::Potential::smooth(FieldExpr::parse("0 - a"));
    // true minimizer sits at a = x + t, outside the box
    CHECK_THROWS_AS(va::hopf_lax(pot, 1.0, 0.0, 0.0, {-0.5, 0.5, -0.5, 0.5}, 65), BoxTooSmall);
}

TEST_CASE("singular point of the symmetric collision potential is y = 0") {
    const auto pot = va::Potential::piecewise(FieldExpr::parse("b"), FieldExpr::parse("0 - b"),
                                              FieldExpr::parse("b"));
    const double ys = va::singular_point(pot, 0.5, 0.1, -0.2, 0.2, {-2, 2, -2, 2}, 1e-10, 129);
    CHECK(std::fabs(ys) < 1e-8);

    // no branch jump on a segment strictly above the surface
    CHECK_THROWS_AS(va::singular_point(pot, 0.5, 0.1, 0.05, 0.2, {-2, 2, -2, 2}, 1e-10, 129),
                    NoJumpDetected);
}

TEST_CASE("singular surface polyline is flat for the unperturbed collision") {
    const auto pot = va::Potential::piecewise(FieldExpr::parse("b"), FieldExpr::parse("0 - b"),
                                              FieldExpr::parse("b"));
    const auto pts = va::singular_surface(pot, 0.5, {-0.2, 0.0, 0.2}, -0.2, 0.2,
                                          {-2, 2, -2, 2}, 1e-10, 129);
    REQUIRE(pts.size() == 3);
    for (const Vec2& p : pts) CHECK(std::fabs(p.y()) < 1e-8);
}

TEST_CASE("first-order shock surface for f = a^2") {
    const double eps = 1e-3, t = 0.5, l = 0.3;
    const Vec2 s = va::rh_perturbation_surface(FieldExpr::parse("a^2"), eps, t, l);
    // x = l + eps * l * t, y = t/2 + eps * (-l^2 - t^2/12)
    CHECK(s.x() == doctest::Approx(l + eps * l * t).epsilon(1e-8));
    CHECK(s.y() ==
          doctest::Approx(t / 2.0 + eps * (-l * l - t * t / 12.0)).epsilon(1e-8));
}

TEST_CASE("surface gap vanishes for affine profiles and not for curved ones") {
    const double eps = 1e-3, t = 0.5;
    CHECK(std::fabs(va::first_order_surface_gap(FieldExpr::parse("a"), eps, t, 0.2)) < 1e-12);
    CHECK(va::first_order_surface_gap(FieldExpr::parse("a^2"), eps, t, 0.0) ==
          doctest::Approx(-eps * t * t / 12.0).epsilon(1e-8));
}

TEST_CASE("surface-coincidence defect is tiny for the unperturbed collision") {
    InitialData d = presets::symmetric_riemann(1.0, 1.0);
    FrontTracker tr(d);
    const FrontHistory hist = tr.run(tr.initialize(17), 0.01, 0.3);
    const auto pot = va::Potential::piecewise(FieldExpr::parse("b"), FieldExpr::parse("0 - b"),
                                              FieldExpr::parse("b"));
    const auto defects = va::surface_coincidence_defects(hist, pot);
    REQUIRE(defects.size() == 17);
    for (std::size_t i = 2; i + 2 < defects.size(); ++i) CHECK(std::fabs(defects[i]) < 1e-8);
}
