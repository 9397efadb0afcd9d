#pragma once
// Touching isoperimetric surrogate I(v) and the induced weight eta = I o V,
// where V solves V' = I(V), V(0) = vm. The surrogate is a kink cone at vm
// (one-sided slopes s_minus >= s_plus, quadratic drop K) blended C^1 into
// power-law tails C0 v^{(n-1)/n} near 0 and C0 (1-v)^{(n-1)/n} near 1; K is
// auto-raised until the surrogate sits below the reference samples.

#include <vector>

#include "chg/potential.hpp"  // CheckResult / ValidationReport

namespace chg {

struct RefSample {
    double v = 0.0;
    double value = 0.0;
};

struct TouchingIso {
    double p0 = 0.0;                 // I(vm)
    double s_minus = 0.0, s_plus = 0.0;
    double k_drop = 0.0;             // quadratic drop, auto-tuned
    double c0 = 0.0;                 // tail constant
    double r = 0.0;                  // tail window; r == 0 disables the tails
    double vm = 0.5;
    int n = 2;                       // ambient dimension (tail exponent (n-1)/n)
    double cone_halfwidth = 0.0;
    // Hermite blend data: [r, vm-d] and [vm+d, 1-r]
    double bl_lo[4] = {0, 0, 0, 0};  // f(r), f'(r), f(vm-d), f'(vm-d)
    double bl_hi[4] = {0, 0, 0, 0};
    std::vector<RefSample> reference;

    double eval(double v) const;
    double deriv(double v, bool from_left) const;  // one-sided at the kink
};

// Throws "anchor not a minimizer value" when the reference dips below p0
// near vm, and when no K <= 1e6 achieves domination or positivity fails.
TouchingIso build_touching_iso(double p0, double s_minus, double s_plus,
                               double c0, double r, double vm, int n,
                               const std::vector<RefSample>& reference);

// Constant surrogate (tails disabled), for flat-weight scenarios and stubs.
TouchingIso flat_iso(double p0, double vm = 0.5);

struct WeightFunction {
    TouchingIso iso;
    double a_end = 0.0, b_end = 0.0;  // interval (A, B); t0 = 0
    double dminus = 0.0, dplus = 0.0; // eta'_-(t0), eta'_+(t0) by chain rule
    // fitted hypothesis constants
    double d1 = 0.0, d2 = 0.0, d3 = 0.0, d4 = 0.0, d5 = 0.0, t_star = 0.0;
    double exponent_a = 0.0, exponent_b = 0.0;  // measured log-log slopes
    // cumulative table t(v) on [v_lo, v_hi]; outside, closed-form tails
    std::vector<double> v_nodes, t_of_v;

    double v_of_t(double t) const;   // V(t)
    double eval(double t) const;     // eta(t) = I(V(t))
    double eta_deriv(double t, bool from_left) const;
};

struct VSolution {
    double a_end = 0.0, b_end = 0.0;
    std::vector<double> v_nodes, t_of_v;
};

// Integrates V' = I(V), V(0) = vm by the separable form t(v) = int dv/I;
// endpoint times are finite because 1/I ~ v^{-(n-1)/n}. Throws when the tail
// integral fails to converge.
VSolution solve_V(const TouchingIso& iso);

WeightFunction build_eta(const TouchingIso& iso, const VSolution& v);
WeightFunction build_eta(const TouchingIso& iso);  // solves V internally

// Hypothesis checks for the weight: positivity, endpoint power behavior
// (measured exponent n-1, the value the I o V construction produces), the
// derivative bound, the kink inequality, and the two mass identities.
ValidationReport validate_eta(const WeightFunction& w);

// int_{t1}^{t2} eta dt by independent adaptive quadrature (the identity
// dV = eta dt makes V(t2) - V(t1) the exact value; this is the cross-check).
double eta_mass(const WeightFunction& w, double t1, double t2);

}  // namespace chg
