#pragma once
// Double-well potentials and hypothesis validation.
//
// A Potential packages closed-form evaluators for W, W', W'' together with
// the well data (a, b, central zero c, well exponent q, well limits). The
// built-ins cover the symmetric quartic, an asymmetric modulation of it, and
// a degenerate family with sub-quadratic wells.

#include <functional>
#include <string>
#include <vector>

namespace chg {

struct Potential {
    std::function<double(double)> w;    // W
    std::function<double(double)> dw;   // W'
    std::function<double(double)> ddw;  // W''
    double a = -1.0;                    // left well
    double b = 1.0;                     // right well
    double c = 0.0;                     // central zero of W'
    double q = 1.0;                     // well exponent, in (0,1]
    double ell_a = 0.0;                 // lim W''(s)/|s-a|^{q-1}
    double ell_b = 0.0;                 // same at b
    bool symmetric = false;
    std::string kind;                   // quartic | asymmetric | degenerate

    double ell() const { return ell_a; }
    double wpp_a() const { return ell_a; }  // W''(a) in the q=1 case
};

// W(s) = (s^2-1)^2, wells at +-1, ell = 8.
Potential make_quartic();

// W(s) = (s^2-1)^2 (1 + beta*atan(s)); requires |beta| < 2/pi.
Potential make_asymmetric(double beta);

// W(s) = |s^2-1|^{q+1} for q in (0,1); compact transition profile.
Potential make_degenerate(double q);

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double expected = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& ck : checks)
            if (!ck.pass) return false;
        return true;
    }
    const CheckResult* find(const std::string& name) const {
        for (const auto& ck : checks)
            if (ck.name == name) return &ck;
        return nullptr;
    }
};

struct PotentialTolerances {
    double zero_refine = 1e-12;    // bisection width for zero location
    double well_limit_rel = 1e-4;  // relative match of the extrapolated limit
    double grid_lo_pad = 2.0;      // sampling interval [a-pad, b+pad]
    int grid_points = 10000;
};

// Checks the hypothesis block: two zeros of W, sign pattern of W', W''(c)<0,
// well limits, and the liminf condition on |W'| at infinity. Non-finite
// evaluator values are reported as failures, never thrown.
ValidationReport validate_potential(const Potential& p,
                                    const PotentialTolerances& tol = {});

}  // namespace chg
