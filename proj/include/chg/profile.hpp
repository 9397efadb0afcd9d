#pragma once
// Heteroclinic transition profile z' = sqrt(W(z)), z(0) = c, and the
// constants attached to it (c_W, c_sym, I0, shift integrals, tau solvers).
//
// The profile is built from the separable form t(z) = int_c^z ds/sqrt(W):
// a dense cumulative table in z gives t to ~1e-13, the table is inverted
// onto a uniform t-grid for evaluation, and the wells are covered by a
// fitted exponential tail model (q = 1) or exact saturation times (q < 1).

#include <vector>

#include "chg/potential.hpp"

namespace chg {

struct Profile {
    Potential pot;

    // uniform t-grid with Hermite data (dz = sqrt(W(z)))
    std::vector<double> t, z, dz;
    double t_lo = 0.0, t_hi = 0.0;  // grid end points (tail switch times)

    // q = 1: z(t)-a ~ amp_a e^{rate_a t} (t -> -inf), b-z(t) ~ amp_b e^{-rate_b t}
    bool exp_tails = false;
    double rate_a = 0.0, amp_a = 0.0, rate_b = 0.0, amp_b = 0.0;

    // q < 1: z saturates exactly at the wells; between the grid ends and the
    // saturation times, z follows the matched power-law approach
    // well -+ pow_amp * (t_sat - t)^{pow_exp}.
    bool saturates = false;
    double t_sat_lo = 0.0, t_sat_hi = 0.0;
    double pow_exp = 0.0, pow_amp_a = 0.0, pow_amp_b = 0.0;

    // dense z-space table (ascending s in (a,b)), t_of_s cumulative
    std::vector<double> s_nodes, t_of_s;

    double eval(double tt) const;   // z(tt)
    double deriv(double tt) const;  // z'(tt) = sqrt(W(z(tt)))
};

// T caps the usable half-width of the t-grid; tol is the target accuracy of
// the table inversion. Throws on integration stall (well too flat to leave).
Profile solve_profile(const Potential& p, double T = 20.0, double tol = 1e-10);

// c_W = int_a^b sqrt(W); adaptive quadrature, well pieces substituted for q<1.
double compute_cw(const Potential& p);

// I0 = int (z - sgn_{a,b}); computed in z-space, no truncation error.
double compute_I0(const Potential& p);

// c_sym = int W(z(t)) t dt, z-space quadrature plus analytic tail terms.
double compute_csym(const Profile& prof);

// int (z(t - tau) - sgn_{a,b}(t)) dt by direct quadrature (oracle-friendly;
// equals I0 - tau (b-a) by change of variables).
double shift_integral(const Profile& prof, double tau);

// tau solving P (I0 - tau (b-a)) = 2 c_W (n-1) kappa / (W''(a)(b-a)); q = 1.
double solve_tau_q1(double P, double kappa, int n, const Potential& p,
                    const Profile& prof);

// tau solving int (z(t - tau) - sgn) = 0; q < 1.
double solve_tau_qlt1(const Profile& prof);

// Root of W'(s) + mu nearest c; throws "multiplier too large" when the
// bracketed search finds no sign change.
double central_zero_shifted(const Potential& p, double mu);

// int over the half line {s < 0} (left) or {s > 0} of
// sqrt(W(z(s-tau))) z'(s-tau) s ds, with analytic tails.
double half_line_moment(const Profile& prof, double tau, bool left);

}  // namespace chg
