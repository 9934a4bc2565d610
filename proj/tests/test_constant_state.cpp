#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "pgd/constant_state.hpp"
#include "pgd/front_tracker.hpp"
#include "pgd/presets.hpp"

using namespace pgd;
namespace cs = pgd::constant_state;

TEST_CASE("asymptotic velocity fraction") {
    CHECK(cs::kappa(1.0, 4.0) == doctest::Approx(1.0 / 3.0));
    CHECK(cs::kappa(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(cs::kappa(4.0, 1.0) == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("closed-form front mass in the generic branch") {
    const cs::Params p{1.0, 4.0, 0.0, -1.0};
    const double G = cs::front_G(p, 1.0, 0.0);
    CHECK(G == doctest::Approx(1.0));

    const auto at0 = cs::closed_form_P(p, G, 1.0, 0.5, 0.0);
    CHECK(at0.P == doctest::Approx(1.0));
    CHECK(at0.k_hat == doctest::Approx(0.5));

    const auto at1 = cs::closed_form_P(p, G, 1.0, 0.5, 1.0);
    CHECK(at1.P == doctest::Approx(std::sqrt(10.0)));

    // k_hat settles at kappa for long times
    const auto late = cs::closed_form_P(p, G, 1.0, 0.5, 1e4);
    CHECK(late.k_hat == doctest::Approx(1.0 / 3.0).epsilon(1e-3));

    // P_dot consistent with a centered difference of P
    const double h = 1e-6;
    const double fd = (cs::closed_form_P(p, G, 1.0, 0.5, 1.0 + h).P -
                       cs::closed_form_P(p, G, 1.0, 0.5, 1.0 - h).P) /
                      (2.0 * h);
    CHECK(at1.P_dot == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("equal-density degenerate branch") {
    const cs::Params p{1.0, 1.0, 0.0, -1.0};
    const auto at0 = cs::closed_form_P(p, 1.0, 1.0, 0.5, 0.0);
    CHECK(at0.P == doctest::Approx(1.0));
    CHECK(at0.k_hat == doctest::Approx(0.5));
    const auto late = cs::closed_form_P(p, 1.0, 1.0, 0.5, 1e4);
    CHECK(late.k_hat == doctest::Approx(0.5).epsilon(1e-3));
    const double h = 1e-6;
    const double fd = (cs::closed_form_P(p, 1.0, 1.0, 0.5, 2.0 + h).P -
                       cs::closed_form_P(p, 1.0, 1.0, 0.5, 2.0 - h).P) /
                      (2.0 * h);
    CHECK(cs::closed_form_P(p, 1.0, 1.0, 0.5, 2.0).P_dot == doctest::Approx(fd).epsilon(1e-6));
}

TEST_CASE("initial velocity fraction outside (0,1) is rejected") {
    const cs::Params p{1.0, 4.0, 0.0, -1.0};
    CHECK_THROWS_AS(cs::closed_form_P(p, 1.0, 1.0, 1.2, 1.0), StabilityViolated);
    CHECK_THROWS_AS(cs::closed_form_P(p, 1.0, 1.0, 0.0, 1.0), StabilityViolated);
}

TEST_CASE("first integrals vanish along the closed-form family") {
    InitialData d = presets::constant_state(1.0, 4.0, 0.6, -0.8);
    FrontTracker tr(d);
    const auto load = presets::constant_state_load(1.0, 0.5, 0.6, -0.8);
    const FrontHistory hist = tr.run(tr.initialize(9, load), 0.01, 0.5);
    const cs::Params p{1.0, 4.0, 0.6, -0.8};
    const auto fi0 = cs::first_integrals_at(p, hist.states.front(), 4);
    const auto fi1 = cs::first_integrals_at(p, hist.states.back(), 4);
    CHECK(std::fabs(fi0.C) < 1e-12);
    CHECK(std::fabs(fi1.C - fi0.C) < 1e-10);
    CHECK(std::fabs(fi1.G - fi0.G) < 1e-10);

    const auto all = cs::first_integrals(p, hist.states.back(), hist);
    REQUIRE(all.size() == 9);
    CHECK(all[4].C == doctest::Approx(fi1.C));
}

TEST_CASE("stability window bookkeeping") {
    std::vector<double> t{0.0, 1.0, 2.0}, k{0.5, 0.5, 0.5};
    const auto flags = cs::stability_window(t, k);
    REQUIRE(flags.size() == 3);
    CHECK(flags[2].k_hat_integral == doctest::Approx(1.0));
    CHECK(flags[1].ok);
    CHECK(flags[2].ok);

    std::vector<double> bad{1.5, 1.5, 1.5};
    const auto flagged = cs::stability_window(t, bad);
    CHECK(!flagged[2].ok);
}

TEST_CASE("P-equation right-hand side and horizon guard") {
    const std::vector<double> P(16, 2.0), C(16, 0.3);
    const auto rhs = cs::p_equation_rhs(P, C, 1.0, 0.1);
    for (double r : rhs) CHECK(std::fabs(r) < 1e-12);

    std::vector<double> Pdot(16, 0.0);
    CHECK_THROWS_AS(
        cs::evolve_p_equation(P, Pdot, C, 1.0, 0.1, 0.01, 1.0 /* beyond safe horizon */),
        StabilityViolated);
    const auto run = cs::evolve_p_equation(P, Pdot, C, 1.0, 0.1, 0.01, 0.05);
    CHECK(run.t.size() == run.P.size());
    CHECK(run.P.back()[3] == doctest::Approx(2.0).epsilon(1e-10));
}
