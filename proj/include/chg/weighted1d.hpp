#pragma once
// Weighted one-dimensional energy G_eps(v) = int (W(v) + eps^2 |v'|^2) eta dt
// under the mass constraint int v eta = m: nonuniform grids resolving the
// eps-layer, a bordered-tridiagonal Newton solver with continuation in eps,
// multiplier extraction, and the two sides of the second-order gap formula.

#include <string>
#include <vector>

#include "chg/potential.hpp"
#include "chg/profile.hpp"
#include "chg/weight.hpp"

namespace chg {

struct WeightedField {
    std::vector<double> t;  // strictly increasing grid in (A,B)
    std::vector<double> v;
};

// Grid clustered to spacing eps/40 over |t| <= 10 eps, graded up to a far
// field spacing fine enough that the eta quadrature error stays below the
// second-order terms, and graded toward the endpoints proportionally to the
// distance from them.
std::vector<double> make_layer_grid(const WeightFunction& w, double eps);

// Composite trapezoid on the nonuniform grid with eta weights.
double energy_G(const WeightedField& f, double eps, const Potential& p,
                const WeightFunction& w);

// Same energy from a cubic interpolant of the solution, integrated
// adaptively; removes the O(h^2) quadrature bias from gap diagnostics.
double energy_G_accurate(const WeightedField& f, double eps, const Potential& p,
                         const WeightFunction& w);

// 2 c_W eta(t_jump) for a two-valued field with a single jump.
double gamma_limit_value(const Potential& p, const WeightFunction& w,
                         double t_jump);
// Jump-detecting variant; throws if f is not two-valued with one transition.
double gamma_limit_value(const Potential& p, const WeightFunction& w,
                         const WeightedField& f);

struct MinimizerResult {
    WeightedField field;
    double eps = 0.0;
    double lambda = 0.0;         // lambda_eps of the Euler-Lagrange equation
    double energy = 0.0;         // trapezoid value
    double energy_acc = 0.0;     // interpolant-quadrature value
    double first_order = 0.0;    // G_eps / eps
    double gap = 0.0;            // (G^(1) - 2 c_W eta(t0)) / eps
    double el_residual = 0.0;
    double mass_residual = 0.0;
    double tau_crossing = 0.0;   // eps-rescaled location where v crosses c
    bool local = true;           // stayed inside the locality ball
    int newton_iterations = 0;
    std::vector<double> residual_history;
};

struct MinimizeOptions {
    double eps0 = 0.25;          // continuation start
    double newton_tol = 1e-10;
    int max_newton = 60;
    double locality_radius = 0.0;  // default 0.1 (b-a)
};

// Newton solve of the discrete EL system with the scalar mass constraint,
// continuation from eps0 halving down to eps. Throws on Newton divergence.
MinimizerResult minimize_Geps(const WeightFunction& w, double eps, double m,
                              const Potential& p, const Profile& prof,
                              const MinimizeOptions& opt = {});

struct LambdaLimit {
    double lambda0 = 0.0;
    bool extrapolated = false;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    bool in_bracket = false;
    double margin = 0.0;
};

// Linear-in-eps extrapolation of lambda_eps from the ladder tail; the bracket
// is [2 c_W eta'_+ / ((b-a) eta(t0)), 2 c_W eta'_- / ((b-a) eta(t0))].
LambdaLimit extract_lambda_limit(const std::vector<MinimizerResult>& ladder,
                                 const Potential& p, const WeightFunction& w);

// sup |v_eps(eps s) - z(s - tau0)| over s in [-l, l].
double rescaled_profile_distance(const MinimizerResult& r, const Profile& prof,
                                 double tau0, double l);

// tau0 with eta(t0) (I0 - tau0 (b-a)) = lambda0 / W''(a) (using int eta = 1).
double solve_tau0(const WeightFunction& w, const Potential& p,
                  const Profile& prof, double lambda0);

// 2 eta'_- int_{-inf}^0 sqrt(W(z(s-tau0))) z'(s-tau0) s ds + 2 eta'_+ int_0^inf
// (...) + lambda0^2/(2 W''(a)) int eta  (last term dropped when q < 1).
double theorem31_rhs(const WeightFunction& w, const Potential& p,
                     const Profile& prof, double lambda0, double tau0);

double second_order_gap(const MinimizerResult& r, const Potential& p,
                        const WeightFunction& w);

}  // namespace chg
