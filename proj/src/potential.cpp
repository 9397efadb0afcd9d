#include "chg/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "chg/rootfind.hpp"

namespace chg {

Potential make_quartic() {
    Potential p;
    p.w = [](double s) { double t = s * s - 1.0; return t * t; };
    p.dw = [](double s) { return 4.0 * s * (s * s - 1.0); };
    p.ddw = [](double s) { return 12.0 * s * s - 4.0; };
    p.a = -1.0;
    p.b = 1.0;
    p.c = 0.0;
    p.q = 1.0;
    p.ell_a = 8.0;
    p.ell_b = 8.0;
    p.symmetric = true;
    p.kind = "quartic";
    return p;
}

Potential make_asymmetric(double beta) {
    if (std::fabs(beta) >= 2.0 / M_PI)
        throw std::invalid_argument("make_asymmetric: |beta| must be < 2/pi");
    Potential p;
    p.w = [beta](double s) {
        const double f = s * s - 1.0;
        return f * f * (1.0 + beta * std::atan(s));
    };
    p.dw = [beta](double s) {
        const double f = s * s - 1.0;
        const double g = 1.0 + beta * std::atan(s);
        return 4.0 * s * f * g + f * f * beta / (1.0 + s * s);
    };
    p.ddw = [beta](double s) {
        const double f = s * s - 1.0;
        const double g = 1.0 + beta * std::atan(s);
        const double u = 1.0 + s * s;
        return 4.0 * g * (f + 2.0 * s * s) + 8.0 * s * f * beta / u -
               2.0 * beta * s * f * f / (u * u);
    };
    p.a = -1.0;
    p.b = 1.0;
    p.q = 1.0;
    p.ell_a = 8.0 * (1.0 - beta * M_PI / 4.0);
    p.ell_b = 8.0 * (1.0 + beta * M_PI / 4.0);
    p.symmetric = (beta == 0.0);
    p.kind = "asymmetric";
    // central zero of W' moves away from 0 for beta != 0
    auto root = bisect(p.dw, -0.9, 0.9, 1e-14);
    p.c = root ? *root : 0.0;
    return p;
}

Potential make_degenerate(double q) {
    if (!(q > 0.0 && q < 1.0))
        throw std::invalid_argument("make_degenerate: q must lie in (0,1)");
    Potential p;
    p.w = [q](double s) {
        return std::pow(std::fabs(s * s - 1.0), q + 1.0);
    };
    p.dw = [q](double s) {
        const double f = s * s - 1.0;
        if (f == 0.0) return 0.0;
        return 2.0 * s * (q + 1.0) * std::pow(std::fabs(f), q) *
               (f > 0 ? 1.0 : -1.0);
    };
    p.ddw = [q](double s) {
        const double f = s * s - 1.0;
        if (f == 0.0) return 0.0;  // pointwise limit irrelevant; C^2 off the wells
        return 2.0 * (q + 1.0) * std::pow(std::fabs(f), q - 1.0) *
               (f + 2.0 * q * s * s);
    };
    p.a = -1.0;
    p.b = 1.0;
    p.c = 0.0;
    p.q = q;
    p.ell_a = p.ell_b = q * (q + 1.0) * std::pow(2.0, q + 1.0);
    p.symmetric = true;
    p.kind = "degenerate";
    return p;
}

namespace {

// ratio-10 Richardson: removes the leading O(h) error term twice
double extrapolate_limit(const std::vector<double>& r) {
    std::vector<double> v = r;
    for (int level = 0; level < 2 && v.size() > 1; ++level) {
        std::vector<double> nxt;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            nxt.push_back((10.0 * v[i + 1] - v[i]) / 9.0);
        v = nxt;
    }
    return v.back();
}

}  // namespace

ValidationReport validate_potential(const Potential& p,
                                    const PotentialTolerances& tol) {
    ValidationReport rep;
    const double lo = p.a - tol.grid_lo_pad;
    const double hi = p.b + tol.grid_lo_pad;
    const int n = tol.grid_points;

    // finite evaluators over the sampling grid
    bool finite = true;
    double wmin_interior = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= n; ++i) {
        const double s = lo + (hi - lo) * i / n;
        const double ws = p.w(s);
        if (!std::isfinite(ws) || !std::isfinite(p.dw(s))) finite = false;
        const bool near_well = std::fabs(s - p.a) < 1e-3 || std::fabs(s - p.b) < 1e-3;
        if (!near_well && ws < wmin_interior) wmin_interior = ws;
    }
    rep.checks.push_back({"finite_evaluators", finite, 0.0, 0.0,
                          finite ? "" : "non-finite value sampled"});
    if (!finite) return rep;

    // (1.4) two zeros of W at the wells, W > 0 elsewhere
    {
        const bool zeros_ok = p.w(p.a) <= 1e-12 && p.w(p.b) <= 1e-12;
        const bool positive = wmin_interior > 0.0;
        rep.checks.push_back({"wells_are_zeros", zeros_ok,
                              std::fmax(p.w(p.a), p.w(p.b)), 0.0, ""});
        rep.checks.push_back({"positive_between", positive, wmin_interior, 0.0, ""});
    }

    // (1.6) W' has exactly 3 zeros a < c < b, W''(c) < 0
    {
        std::vector<double> zeros;
        double prev_s = lo, prev_f = p.dw(lo);
        for (int i = 1; i <= n; ++i) {
            const double s = lo + (hi - lo) * i / n;
            const double f = p.dw(s);
            if (prev_f == 0.0) zeros.push_back(prev_s);
            else if (prev_f * f < 0.0) {
                auto r = bisect(p.dw, prev_s, s, tol.zero_refine);
                if (r) zeros.push_back(*r);
            }
            prev_s = s;
            prev_f = f;
        }
        // merge near-duplicates (flat wells of the degenerate family)
        std::vector<double> uniq;
        for (double z : zeros)
            if (uniq.empty() || z - uniq.back() > 1e-6) uniq.push_back(z);
        const bool three = uniq.size() == 3 && std::fabs(uniq[0] - p.a) < 1e-6 &&
                           std::fabs(uniq[2] - p.b) < 1e-6 &&
                           std::fabs(uniq[1] - p.c) < 1e-6;
        rep.checks.push_back({"wprime_three_zeros", three,
                              static_cast<double>(uniq.size()), 3.0, ""});
        const double wppc = p.ddw(p.c);
        rep.checks.push_back({"wpp_negative_at_c", wppc < 0.0, wppc, 0.0, ""});
    }

    // (1.5) well limits W''(s)/|s-well|^{q-1} -> ell
    for (int side = 0; side < 2; ++side) {
        const double well = side == 0 ? p.a : p.b;
        const double declared = side == 0 ? p.ell_a : p.ell_b;
        const double dir = side == 0 ? 1.0 : -1.0;  // approach from inside
        std::vector<double> ratios;
        for (int k = 2; k <= 6; ++k) {
            const double h = std::pow(10.0, -k);
            ratios.push_back(p.ddw(well + dir * h) / std::pow(h, p.q - 1.0));
        }
        const double limit = extrapolate_limit(ratios);
        const bool ok = std::fabs(limit - declared) <=
                        tol.well_limit_rel * std::fmax(1.0, std::fabs(declared));
        rep.checks.push_back({side == 0 ? "well_limit_a" : "well_limit_b", ok,
                              limit, declared, ""});
    }

    // (1.7) liminf of |W'| at infinity, sampled on two far windows
    {
        double m = std::numeric_limits<double>::infinity();
        for (int i = 0; i <= 200; ++i) {
            const double s1 = p.a - 10.0 + 5.0 * i / 200.0;
            const double s2 = p.b + 5.0 + 5.0 * i / 200.0;
            m = std::fmin(m, std::fmin(std::fabs(p.dw(s1)), std::fabs(p.dw(s2))));
        }
        rep.checks.push_back({"gurtin_liminf", m > 0.0, m, 0.0, ""});
    }
    return rep;
}

}  // namespace chg
