#pragma once
// Mass-preserving Allen-Cahn and Cahn-Hilliard flows on the unit square with
// homogeneous Neumann data. Both steppers are linearly stabilized
// semi-implicit schemes diagonalized by the even cosine transform, so the
// zero mode -- the discrete mass -- is preserved to round-off.

#include <memory>
#include <string>
#include <vector>

#include "chg/potential.hpp"
#include "chg/profile.hpp"

namespace chg {

struct Field2D {
    int nx = 0, ny = 0;
    double h = 0.0;
    std::vector<double> u;  // row-major, nx*ny values at cell centers

    double mass() const;    // integral over the unit square
};

struct SimConfig {
    double eps = 0.02;
    double dt = 0.0;        // 0 -> scheme default
    Potential pot;
    double stab = 0.0;      // 0 -> max |W''| over the invariant box
    bool conserve = true;   // multiplier toggle (AC only)
};

class Dct2D;  // fftw workspace

struct Stepper {
    SimConfig cfg;
    std::shared_ptr<Dct2D> dct;
    double stab = 0.0;
    double dt = 0.0;

    Stepper(const SimConfig& c, int nx, int ny, bool ch);
    void step_ac(Field2D& f) const;
    void step_ch(Field2D& f) const;
};

// F_eps(u) = sum (eps^2 |grad u|^2 + W(u)) h^2, forward differences.
double energy_F(const Field2D& f, double eps, const Potential& p);

// Dual Sobolev norm through -Delta phi + phi = f.
double h1_dual_norm(const Field2D& f);

struct WellPrepared {
    Field2D u;
    double shift = 0.0;          // layer shift used for the mass correction
    double energy_ratio = 0.0;   // F_eps(u)/eps vs 2 c_W P(E0)
    double implied_c = 0.0;      // (F_eps - eps 2 c_W P)/eps^2
    double perimeter = 0.0;
    double mass_residual = 0.0;
};

// geometry: "disk" (centered, area vm) or "strip" ({y < vm}); u0 is the
// profile of the signed distance with a scalar shift matching the mass m.
WellPrepared well_prepared_init(const std::string& geometry, double vm,
                                double eps, const Profile& prof, double m,
                                int nx);

struct SlowRunStats {
    double eps = 0.0;
    double sup_l1 = 0.0;        // sup_t ||u(t) - u_{E0}||_L1
    double sup_dual = 0.0;      // sup_t dual-norm distance
    double mass_drift = 0.0;
    bool energy_monotone = true;
    double energy_tol_violation = 0.0;
    double wellprep_c = 0.0;
    int steps = 0;
};

struct SlowMotionReport {
    std::vector<SlowRunStats> runs;
    std::vector<double> l1_ratios;    // consecutive sup_l1 quotients
    std::vector<double> dual_ratios;
};

// Runs each eps to T = M/eps with h = eps/4 and reports the ladder.
SlowMotionReport slow_motion_experiment(const std::string& flow,
                                        const std::string& geometry,
                                        double vm, double m,
                                        const std::vector<double>& eps_list,
                                        double M, const Profile& prof);

}  // namespace chg
