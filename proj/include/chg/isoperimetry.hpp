#pragma once
// Isoperimetric functions on planar domains: exact brute-force optima on
// small pixel grids (4-neighbor relative perimeter), the analytic rectangle
// profile (quarter-disk / straight-cut branches), one-sided derivatives,
// semi-concavity fits, erosion bounds, and the local-profile curvature sweep.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace chg {

struct PixelDomain {
    int rows = 0, cols = 0;
    double h = 0.0;                 // cell size; rows*cols*h^2 = 1 for full grids
    std::vector<uint8_t> cell;      // row-major membership mask
    int cell_count() const;
    bool connected() const;         // 4-connectivity of the mask
};

// Full rows x cols grid scaled to unit measure.
PixelDomain rect_domain(int rows, int cols);

// Region as a bitmask over the domain's member cells, in row-major order.
using RegionMask = uint32_t;

double perimeter_rel(RegionMask e, const PixelDomain& dom);
double measure(RegionMask e, const PixelDomain& dom);
double alpha(RegionMask e1, RegionMask e2, const PixelDomain& dom);

struct IsoOptimum {
    double value = 0.0;
    RegionMask argmin = 0;
};

struct AlphaConstraint {
    RegionMask e0 = 0;
    double delta = 0.0;
};

// Exact discrete minimum of relative perimeter over subsets of measure v
// (v must be k*h^2); optional alpha-locality constraint about e0. Throws for
// unattainable v (listing the nearest attainable measures) and for domains
// with more than 24 cells.
IsoOptimum iso_bruteforce(const PixelDomain& dom, double v,
                          const std::optional<AlphaConstraint>& constraint = {});

// Rectangle of width w, height 1/w, area 1: min over the corner quarter-disk
// branch sqrt(pi v), its complement branch, and the straight cut min(w, 1/w).
double iso_analytic_rectangle(double w, double v);

// Richardson-extrapolated one-sided difference quotients at v0.
struct OneSided {
    double d_minus = 0.0, d_plus = 0.0;
};
OneSided one_sided_derivatives(const std::function<double(double)>& f,
                               double v0, double h0 = 1e-2);

// Least C >= 0 with all centered second differences of the samples <= C h^2.
double semiconcavity_estimate(const std::vector<double>& values, double h);

struct LevelSetCheck {
    bool hypothesis_met = false;   // L1 closeness assumption held
    bool pass = false;             // alpha(e0, {u <= s}) <= delta for all s
    double worst_alpha = 0.0;
};

// Sweeps every level set of u against the alpha-ball around e0. The field u
// and the membership flags e0 are indexed over the domain's member cells, so
// this works on grids too large for RegionMask enumeration.
LevelSetCheck level_set_alpha_check(const std::vector<double>& u,
                                    const std::vector<uint8_t>& e0, double delta,
                                    const PixelDomain& dom, double a, double b);

// Axis-aligned rectangle helpers for the erosion lemma.
struct Rect {
    double w = 0.0, h = 0.0;
    double area() const { return w * h; }
};
Rect erode_rect(const Rect& r, double tau);  // throws if empty

// Pixel-mode erosion: keep cells whose centers lie at distance > tau from
// the complement of the domain. Throws if the result is empty.
PixelDomain erode(const PixelDomain& dom, double tau);

// Relative isoperimetric value of a rectangle of arbitrary area at measure v.
double iso_rect_value(const Rect& r, double v);

struct ErodedBoundReport {
    double c2 = 0.0;               // largest C2 with I_{U_tau}(v) >= C2 sqrt(v)
    double window_lo = 0.0, window_hi = 0.0;
    int samples_used = 0;
};
ErodedBoundReport eroded_iso_bound_check(const Rect& r, double tau,
                                         const std::vector<double>& vs,
                                         double c1 = 4.0);

// Local profile of the unit square about an analytic reference set:
// kind "strip" (straight cut at height vm) or "disk" (corner quarter-disk of
// area vm). Competitors are the two branch families plus complements with the
// alpha-locality constraint applied exactly.
double local_square_profile(const std::string& e0_kind, double vm,
                            double delta, double v);

struct CurvatureSweepPoint {
    double delta = 0.0;
    double d_minus = 0.0, d_plus = 0.0;
};
struct CurvatureSweepReport {
    std::vector<CurvatureSweepPoint> points;
    double target = 0.0;           // (n-1) kappa of the reference branch
};
CurvatureSweepReport curvature_limit_sweep(const std::string& e0_kind,
                                           double vm,
                                           const std::vector<double>& deltas);

}  // namespace chg
