#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "pgd/fieldexpr.hpp"

using pgd::FieldExpr;

TEST_CASE("basic arithmetic") {
    CHECK(FieldExpr::parse("a + 2*b").eval(1, 2) == doctest::Approx(5.0));
    CHECK(FieldExpr::parse("a^2").eval(3, 0) == doctest::Approx(9.0));
    CHECK(FieldExpr::parse("b + 0.01*a^2").eval(2, 1) == doctest::Approx(1.04));
    CHECK(FieldExpr::parse("0").eval(12.3, -4.0) == 0.0);
    CHECK(FieldExpr::parse("sin(a)").eval(0, 5) == doctest::Approx(0.0));
}

TEST_CASE("precedence and unary minus") {
    CHECK(FieldExpr::parse("2+3*4").eval(0, 0) == doctest::Approx(14.0));
    CHECK(FieldExpr::parse("-a^2").eval(2, 0) == doctest::Approx(-4.0));
    CHECK(FieldExpr::parse("2^3^2").eval(0, 0) == doctest::Approx(512.0));  // right-assoc
    CHECK(FieldExpr::parse("(2+3)*4").eval(0, 0) == doctest::Approx(20.0));
    CHECK(FieldExpr::parse("-2^2").eval(0, 0) == doctest::Approx(-4.0));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(FieldExpr::parse("a/b").eval(1, 0), pgd::DomainError);
    CHECK_THROWS_AS(FieldExpr::parse("sqrt(a)").eval(-1, 0), pgd::DomainError);
    CHECK_THROWS_AS(FieldExpr::parse("log(a)").eval(0, 0), pgd::DomainError);
}

TEST_CASE("parse errors carry position") {
    try {
        FieldExpr::parse("a + * b");
        FAIL("expected ParseError");
    } catch (const pgd::ParseError& e) {
        CHECK(e.position == 4);
    }
    CHECK_THROWS_AS(FieldExpr::parse("a + c"), pgd::ParseError);
    CHECK_THROWS_AS(FieldExpr::parse("foo(a)"), pgd::ParseError);
    CHECK_THROWS_AS(FieldExpr::parse("a + "), pgd::ParseError);
    CHECK_THROWS_AS(FieldExpr::parse("(a"), pgd::ParseError);
}

TEST_CASE("custom variable names") {
    auto e = FieldExpr::parse("2*l + 1", {"l"});
    CHECK(e.eval(3) == doctest::Approx(7.0));
    CHECK_THROWS_AS(FieldExpr::parse("a", {"l"}), pgd::ParseError);
}

TEST_CASE("symbolic derivatives") {
    CHECK(FieldExpr::parse("a^2").derivative("a").eval(3, 0) == doctest::Approx(6.0));
    CHECK(FieldExpr::parse("a").derivative("b").eval(7, -2) == doctest::Approx(0.0));
    auto faa = FieldExpr::parse("b + 0.01*a^2").derivative("a").derivative("a");
    CHECK(faa.eval(5, 9) == doctest::Approx(0.02));
    CHECK_THROWS_AS(FieldExpr::parse("abs(a)").derivative("a"), pgd::NonDifferentiableError);
    // general power rule
    auto e = FieldExpr::parse("a^b");
    CHECK(e.derivative("a").eval(2.0, 3.0) == doctest::Approx(12.0));
    CHECK(e.derivative("b").eval(2.0, 3.0) == doctest::Approx(8.0 * std::log(2.0)));
}

TEST_CASE("render round-trips evaluation semantics") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pt(-2.0, 2.0);
    const char* sources[] = {"a + 2*b", "-a^2 + sin(b)*cos(a)", "exp(a/4) / (2 + b^2)",
                             "sqrt(a^2 + b^2 + 1)", "1/(1+a^2) - b"};
    for (const char* s : sources) {
        auto e = FieldExpr::parse(s);
        auto r = FieldExpr::parse(e.str());
        for (int i = 0; i < 50; ++i) {
            double a = pt(rng), b = pt(rng);
            CHECK(e.eval(a, b) == doctest::Approx(r.eval(a, b)).epsilon(1e-14));
        }
    }
}

namespace {
std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, depth <= 0 ? 3 : 9);
    std::uniform_real_distribution<double> cst(-2.0, 2.0);
    switch (pick(rng)) {
        case 0: return "a";
        case 1: return "b";
        case 2:
        case 3: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", cst(rng));
            return buf;
        }
        case 4: return "(" + random_expr(rng, depth - 1) + "+" + random_expr(rng, depth - 1) + ")";
        case 5: return "(" + random_expr(rng, depth - 1) + "-" + random_expr(rng, depth - 1) + ")";
        case 6: return "(" + random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1) + ")";
        case 7: return "sin(" + random_expr(rng, depth - 1) + ")";
        case 8: return "cos(" + random_expr(rng, depth - 1) + ")";
        default: return "(" + random_expr(rng, depth - 1) + "/(3+a^2+b^2))";
    }
}
}  // namespace

TEST_CASE("derivative matches finite differences on random expressions") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> pt(-1.5, 1.5);
    int checked = 0;
    while (checked < 300) {
        auto src = random_expr(rng, 3);
        auto e = FieldExpr::parse(src);
        pgd::FieldExpr da, db;
        da = e.derivative("a");
        db = e.derivative("b");
        double a = pt(rng), b = pt(rng);
        const double h = 1e-6;
        try {
            double fda = (e.eval(a + h, b) - e.eval(a - h, b)) / (2 * h);
            double fdb = (e.eval(a, b + h) - e.eval(a, b - h)) / (2 * h);
            double sa = da.eval(a, b), sb = db.eval(a, b);
            double scale_a = std::max({1.0, std::fabs(sa)});
            double scale_b = std::max({1.0, std::fabs(sb)});
            CHECK(std::fabs(sa - fda) / scale_a < 1e-5);
            CHECK(std::fabs(sb - fdb) / scale_b < 1e-5);
            ++checked;
        } catch (const pgd::DomainError&) {
            // singular sample; skip
        }
    }
}
