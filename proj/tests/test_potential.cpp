#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chg/potential.hpp"

using namespace chg;

TEST_CASE("quartic point values") {
    const Potential p = make_quartic();
    CHECK(p.w(0.0) == doctest::Approx(1.0));
    CHECK(p.dw(0.0) == doctest::Approx(0.0));
    CHECK(p.ddw(0.0) == doctest::Approx(-4.0));
    CHECK(p.ddw(1.0) == doctest::Approx(8.0));
    CHECK(p.a == -1.0);
    CHECK(p.b == 1.0);
    CHECK(p.c == 0.0);
    CHECK(p.q == 1.0);
    CHECK(p.ell() == doctest::Approx(8.0));
}

TEST_CASE("quartic validation passes") {
    const auto rep = validate_potential(make_quartic());
    for (const auto& ck : rep.checks) {
        INFO(ck.name, " measured=", ck.measured, " expected=", ck.expected);
        CHECK(ck.pass);
    }
    const auto* wl = rep.find("well_limit_a");
    REQUIRE(wl != nullptr);
    CHECK(wl->measured == doctest::Approx(8.0).epsilon(1e-6));
}

TEST_CASE("asymmetric beta=0 reduces to the quartic") {
    const Potential p0 = make_quartic();
    const Potential p = make_asymmetric(0.0);
    double sup = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double s = -2.0 + i * 0.01;
        sup = std::fmax(sup, std::fabs(p.w(s) - p0.w(s)));
    }
    CHECK(sup < 1e-14);
}

TEST_CASE("asymmetric beta=0.5") {
    const Potential p = make_asymmetric(0.5);
    // W''(b) = 8 (1 + beta atan 1) since the quadratic zero kills cross terms
    CHECK(p.ddw(1.0) == doctest::Approx(8.0 * (1.0 + 0.5 * std::atan(1.0))));
    CHECK(p.ell_a == doctest::Approx(8.0 * (1.0 - 0.5 * M_PI / 4.0)));
    CHECK(p.ell_b == doctest::Approx(8.0 * (1.0 + 0.5 * M_PI / 4.0)));
    const auto rep = validate_potential(p);
    for (const auto& ck : rep.checks) {
        INFO(ck.name, " measured=", ck.measured);
        CHECK(ck.pass);
    }
    // central zero shifted left of 0 (W' gains a positive bump on the right)
    CHECK(p.w(p.c) > 0.0);
    CHECK(std::fabs(p.dw(p.c)) < 1e-10);
}

TEST_CASE("asymmetric convergence as beta -> 0") {
    const Potential p0 = make_quartic();
    for (double beta : {0.2, 0.1, 0.05}) {
        const Potential p = make_asymmetric(beta);
        double sup = 0.0;
        for (int i = 0; i <= 200; ++i) {
            const double s = -2.0 + i * 0.02;
            sup = std::fmax(sup, std::fabs(p.w(s) - p0.w(s)));
        }
        CHECK(sup <= 10.0 * beta);  // |W_beta - W| <= beta |atan s| (s^2-1)^2
    }
}

TEST_CASE("asymmetric rejects large beta") {
    CHECK_THROWS(make_asymmetric(2.0 / M_PI));
    CHECK_THROWS(make_asymmetric(-0.7));
}

TEST_CASE("degenerate family") {
    const Potential p = make_degenerate(0.5);
    CHECK(p.w(0.0) == doctest::Approx(1.0));
    CHECK(p.q == doctest::Approx(0.5));
    // W(s)/|s-1|^{1.5} -> 2^{1.5} as s -> 1
    const double s = 1.0 - 1e-6;
    CHECK(p.w(s) / std::pow(1.0 - s, 1.5) ==
          doctest::Approx(std::pow(2.0, 1.5)).epsilon(1e-5));
    CHECK(p.ell() == doctest::Approx(0.5 * 1.5 * std::pow(2.0, 1.5)));
    const auto rep = validate_potential(p);
    for (const auto& ck : rep.checks) {
        INFO(ck.name, " measured=", ck.measured);
        CHECK(ck.pass);
    }
    CHECK_THROWS(make_degenerate(1.0));
    CHECK_THROWS(make_degenerate(0.0));
    CHECK_THROWS(make_degenerate(-0.5));
}

TEST_CASE("single-well potential fails validation") {
    Potential p;
    p.w = [](double s) { return s * s; };
    p.dw = [](double s) { return 2.0 * s; };
    p.ddw = [](double) { return 2.0; };
    p.a = -1.0;
    p.b = 1.0;
    p.c = 0.0;
    p.q = 1.0;
    p.ell_a = p.ell_b = 2.0;
    p.kind = "custom";
    const auto rep = validate_potential(p);
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("non-finite evaluator reports failure without throwing") {
    Potential p = make_quartic();
    p.w = [](double s) { return s == 0.0 ? NAN : (s * s - 1) * (s * s - 1); };
    ValidationReport rep;
    CHECK_NOTHROW(rep = validate_potential(p));
    CHECK_FALSE(rep.all_pass());
}

TEST_CASE("nonnegativity on a dense grid") {
    for (const Potential& p :
         {make_quartic(), make_asymmetric(0.5), make_degenerate(0.5)}) {
        for (int i = 0; i <= 2000; ++i) {
            const double s = -3.0 + i * 0.003;
            CHECK(p.w(s) >= -1e-15);
        }
    }
}
