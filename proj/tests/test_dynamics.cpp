#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "chg/dynamics.hpp"
#include "chg/potential.hpp"
#include "chg/profile.hpp"

using namespace chg;

namespace {

Field2D constant_field(int n, double val) {
    Field2D f;
    f.nx = f.ny = n;
    f.h = 1.0 / n;
    f.u.assign(std::size_t(n) * n, val);
    return f;
}

const Profile& quartic_profile() {
    static Profile prof = solve_profile(make_quartic());
    return prof;
}

}  // namespace

TEST_CASE("field mass") {
    Field2D f = constant_field(16, 0.25);
    CHECK(f.mass() == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("energy of constant fields") {
    const Potential p = make_quartic();
    CHECK(energy_F(constant_field(16, 1.0), 0.1, p) ==
          doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    CHECK(energy_F(constant_field(16, 0.0), 0.1, p) == doctest::Approx(1.0));
}

TEST_CASE("dual norm basics") {
    Field2D z = constant_field(20, 0.0);
    CHECK(h1_dual_norm(z) == doctest::Approx(0.0).scale(1.0));
    Field2D one = constant_field(20, 1.0);
    CHECK(h1_dual_norm(one) == doctest::Approx(1.0).epsilon(1e-10));
    Field2D two = constant_field(20, 2.0);
    CHECK(h1_dual_norm(two) == doctest::Approx(2.0).epsilon(1e-10));
    // nonconstant linearity spot check
    Field2D g = constant_field(20, 0.0);
    for (int i = 0; i < 20; ++i)
        for (int j = 0; j < 20; ++j)
            g.u[std::size_t(i) * 20 + j] = std::cos(M_PI * (j + 0.5) / 20.0);
    Field2D g2 = g;
    for (auto& x : g2.u) x *= -3.0;
    CHECK(h1_dual_norm(g2) == doctest::Approx(3.0 * h1_dual_norm(g)).epsilon(1e-10));
}

TEST_CASE("constants are stationary under the conserved AC flow") {
    SimConfig cfg;
    cfg.eps = 0.1;
    cfg.pot = make_quartic();
    Stepper st(cfg, 24, 24, false);
    // critical constant
    Field2D f = constant_field(24, 1.0);
    st.step_ac(f);
    for (double x : f.u) CHECK(x == doctest::Approx(1.0).epsilon(1e-13));
    // non-critical constant: multiplier cancels the reaction exactly
    Field2D g = constant_field(24, 0.37);
    for (int k = 0; k < 10; ++k) st.step_ac(g);
    for (double x : g.u) CHECK(x == doctest::Approx(0.37).epsilon(1e-12));
}

TEST_CASE("AC conserves mass; the lambda toggle loses it") {
    SimConfig cfg;
    cfg.eps = 0.08;
    cfg.pot = make_quartic();
    const auto wp = well_prepared_init("disk", 0.2, cfg.eps, quartic_profile(),
                                       -1.0 * 0.2 + 1.0 * 0.8, 32);
    Field2D f = wp.u;
    const double m0 = f.mass();
    Stepper st(cfg, f.nx, f.ny, false);
    double drift = 0.0;
    for (int k = 0; k < 400; ++k) {
        st.step_ac(f);
        drift = std::fmax(drift, std::fabs(f.mass() - m0));
    }
    CHECK(drift <= 1e-12);

    SimConfig plain = cfg;
    plain.conserve = false;
    Field2D g = wp.u;
    Stepper st2(plain, g.nx, g.ny, false);
    for (int k = 0; k < 400; ++k) st2.step_ac(g);
    CHECK(std::fabs(g.mass() - m0) > 1e-4);  // asymmetric data loses mass
}

TEST_CASE("AC energy is nonincreasing") {
    SimConfig cfg;
    cfg.eps = 0.08;
    cfg.pot = make_quartic();
    const auto wp = well_prepared_init("disk", 0.2, cfg.eps, quartic_profile(),
                                       0.6, 32);
    Field2D f = wp.u;
    Stepper st(cfg, f.nx, f.ny, false);
    double prev = energy_F(f, cfg.eps, cfg.pot);
    for (int k = 0; k < 200; ++k) {
        st.step_ac(f);
        const double e = energy_F(f, cfg.eps, cfg.pot);
        CHECK(e <= prev + 1e-10);
        prev = e;
    }
}

TEST_CASE("CH conserves mass and decreases energy") {
    SimConfig cfg;
    cfg.eps = 0.08;
    cfg.pot = make_quartic();
    const auto wp = well_prepared_init("strip", 0.3, cfg.eps, quartic_profile(),
                                       -1.0 * 0.3 + 1.0 * 0.7, 32);
    Field2D f = wp.u;
    const double m0 = f.mass();
    Stepper st(cfg, f.nx, f.ny, true);
    double prev = energy_F(f, cfg.eps, cfg.pot);
    double drift = 0.0;
    for (int k = 0; k < 400; ++k) {
        st.step_ch(f);
        drift = std::fmax(drift, std::fabs(f.mass() - m0));
        const double e = energy_F(f, cfg.eps, cfg.pot);
        CHECK(e <= prev + 1e-10);
        prev = e;
    }
    CHECK(drift <= 1e-12);
    // critical constant is a fixed point
    Field2D c = constant_field(24, -1.0);
    Stepper st2(cfg, 24, 24, true);
    st2.step_ch(c);
    for (double x : c.u) CHECK(x == doctest::Approx(-1.0).epsilon(1e-13));
}

TEST_CASE("well-prepared initial data") {
    const double vm = 0.2, eps = 0.02;
    const double m = -1.0 * vm + 1.0 * (1.0 - vm);
    const auto wp = well_prepared_init("disk", vm, eps, quartic_profile(), m,
                                       int(std::lround(4.0 / eps)));
    CHECK(wp.mass_residual <= 1e-12);
    CHECK(wp.u.mass() == doctest::Approx(m).epsilon(1e-10));
    // F_eps(u0)/eps within 3% of 2 c_W P(disk)
    CHECK(wp.energy_ratio == doctest::Approx(1.0).epsilon(0.03));
    CHECK(wp.perimeter == doctest::Approx(2.0 * std::sqrt(M_PI * vm)).epsilon(1e-12));
    // mismatched mass is rejected
    CHECK_THROWS(well_prepared_init("disk", vm, eps, quartic_profile(), 0.0, 64));
}

TEST_CASE("slow-motion ladder shrinks the drift") {
    const double vm = 0.2;
    const double m = -1.0 * vm + 1.0 * (1.0 - vm);
    const auto rep = slow_motion_experiment("ac", "disk", vm, m, {0.16, 0.08},
                                            0.25, quartic_profile());
    REQUIRE(rep.runs.size() == 2);
    for (const auto& r : rep.runs) {
        CHECK(r.mass_drift <= 1e-10);
        CHECK(r.energy_monotone);
        CHECK(r.steps > 0);
    }
    CHECK(rep.runs[1].sup_l1 < rep.runs[0].sup_l1);
    REQUIRE(rep.l1_ratios.size() == 1);
    CHECK(rep.l1_ratios[0] == doctest::Approx(rep.runs[0].sup_l1 / rep.runs[1].sup_l1));
}
