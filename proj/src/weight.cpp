#include "chg/weight.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "chg/quadrature.hpp"

namespace chg {

namespace {

double hermite(double x0, double x1, double f0, double d0, double f1, double d1,
               double x) {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return f0 * (2 * u3 - 3 * u2 + 1) + f1 * (-2 * u3 + 3 * u2) +
           h * (d0 * (u3 - 2 * u2 + u) + d1 * (u3 - u2));
}

double hermite_d(double x0, double x1, double f0, double d0, double f1,
                 double d1, double x) {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u;
    return (f0 * (6 * u2 - 6 * u) + f1 * (-6 * u2 + 6 * u)) / h +
           d0 * (3 * u2 - 4 * u + 1) + d1 * (3 * u2 - 2 * u);
}

}  // namespace

double TouchingIso::eval(double v) const {
    v = std::clamp(v, 1e-300, 1.0 - 1e-16);
    const double e = double(n - 1) / n;
    const double d = cone_halfwidth;
    if (r > 0.0) {
        if (v <= r) return c0 * std::pow(v, e);
        if (v >= 1.0 - r) return c0 * std::pow(1.0 - v, e);
        if (v < vm - d)
            return hermite(r, vm - d, bl_lo[0], bl_lo[1], bl_lo[2], bl_lo[3], v);
        if (v > vm + d)
            return hermite(vm + d, 1.0 - r, bl_hi[0], bl_hi[1], bl_hi[2],
                           bl_hi[3], v);
    }
    const double dv = v - vm;
    const double slope = dv <= 0.0 ? s_minus : s_plus;
    return p0 + slope * dv - k_drop * dv * dv;
}

double TouchingIso::deriv(double v, bool from_left) const {
    const double e = double(n - 1) / n;
    const double d = cone_halfwidth;
    if (r > 0.0) {
        if (v < r || (v == r && from_left))
            return e * c0 * std::pow(v, e - 1.0);
        if (v > 1.0 - r || (v == 1.0 - r && !from_left))
            return -e * c0 * std::pow(1.0 - v, e - 1.0);
        if (v < vm - d || (v == vm - d && from_left))
            return hermite_d(r, vm - d, bl_lo[0], bl_lo[1], bl_lo[2], bl_lo[3], v);
        if (v > vm + d || (v == vm + d && !from_left))
            return hermite_d(vm + d, 1.0 - r, bl_hi[0], bl_hi[1], bl_hi[2],
                             bl_hi[3], v);
    }
    const double dv = v - vm;
    const double slope = (dv < 0.0 || (dv == 0.0 && from_left)) ? s_minus : s_plus;
    return slope - 2.0 * k_drop * dv;
}

namespace {

void fill_blends(TouchingIso& iso) {
    if (iso.r <= 0.0) return;
    const double e = double(iso.n - 1) / iso.n;
    const double d = iso.cone_halfwidth;
    iso.bl_lo[0] = iso.c0 * std::pow(iso.r, e);
    iso.bl_lo[1] = e * iso.c0 * std::pow(iso.r, e - 1.0);
    iso.bl_lo[2] = iso.p0 - iso.s_minus * d - iso.k_drop * d * d;
    iso.bl_lo[3] = iso.s_minus + 2.0 * iso.k_drop * d;
    iso.bl_hi[0] = iso.p0 + iso.s_plus * d - iso.k_drop * d * d;
    iso.bl_hi[1] = iso.s_plus - 2.0 * iso.k_drop * d;
    iso.bl_hi[2] = iso.c0 * std::pow(iso.r, e);
    iso.bl_hi[3] = -e * iso.c0 * std::pow(iso.r, e - 1.0);
}

bool dominated_and_positive(const TouchingIso& iso, std::string* why) {
    for (const auto& ref : iso.reference) {
        if (!(ref.v > 0.0 && ref.v < 1.0)) continue;
        if (iso.eval(ref.v) > ref.value + 1e-9) {
            if (std::fabs(ref.v - iso.vm) < 1e-6 && ref.value < iso.p0 - 1e-9) {
                *why = "anchor not a minimizer value";
                return false;
            }
            *why = "domination";
            return false;
        }
    }
    for (int i = 1; i < 2000; ++i) {
        const double v = double(i) / 2000.0;
        if (!(iso.eval(v) > 0.0)) {
            *why = "positivity";
            return false;
        }
    }
    return true;
}

}  // namespace

TouchingIso build_touching_iso(double p0, double s_minus, double s_plus,
                               double c0, double r, double vm, int n,
                               const std::vector<RefSample>& reference) {
    if (s_minus < s_plus)
        throw std::invalid_argument("build_touching_iso: requires s_minus >= s_plus");
    if (!(p0 > 0.0))
        throw std::invalid_argument("build_touching_iso: P0 must be positive");
    if (!(r >= 0.0 && r < vm && vm < 1.0 - r))
        throw std::invalid_argument("build_touching_iso: need 0 <= r < vm < 1-r");
    TouchingIso iso;
    iso.p0 = p0;
    iso.s_minus = s_minus;
    iso.s_plus = s_plus;
    iso.c0 = c0;
    iso.r = r;
    iso.vm = vm;
    iso.n = n;
    iso.reference = reference;
    iso.cone_halfwidth =
        r > 0.0 ? 0.5 * std::fmin(vm - r, 1.0 - r - vm) : 1.0;

    std::string why;
    for (double k = 0.0; k <= 1e6; k = (k == 0.0 ? 1.0 : 2.0 * k)) {
        iso.k_drop = k;
        fill_blends(iso);
        if (dominated_and_positive(iso, &why)) return iso;
        if (why == "anchor not a minimizer value")
            throw std::runtime_error("build_touching_iso: " + why);
        if (why == "positivity")
            throw std::runtime_error(
                "build_touching_iso: surrogate not positive on (0,1)");
    }
    throw std::runtime_error(
        "build_touching_iso: domination not achievable with K <= 1e6");
}

TouchingIso flat_iso(double p0, double vm) {
    TouchingIso iso;
    iso.p0 = p0;
    iso.vm = vm;
    iso.r = 0.0;
    iso.cone_halfwidth = 1.0;
    return iso;
}

VSolution solve_V(const TouchingIso& iso) {
    VSolution sol;
    const double d = iso.cone_halfwidth;
    double v_lo, v_hi;
    std::vector<double> brk;
    if (iso.r > 0.0) {
        v_lo = iso.r;
        v_hi = 1.0 - iso.r;
        brk = {iso.r, iso.vm - d, iso.vm, iso.vm + d, 1.0 - iso.r};
    } else {
        v_lo = 1e-9;
        v_hi = 1.0 - 1e-9;
        brk = {v_lo, iso.vm, v_hi};
    }
    std::vector<double>& vn = sol.v_nodes;
    for (std::size_t j = 0; j + 1 < brk.size(); ++j) {
        const int m = 600;
        for (int i = 0; i < m; ++i)
            vn.push_back(brk[j] + (brk[j + 1] - brk[j]) * double(i) / m);
    }
    vn.push_back(brk.back());

    auto inv = [&iso](double v) { return 1.0 / iso.eval(v); };
    const std::size_t ic =
        std::lower_bound(vn.begin(), vn.end(), iso.vm) - vn.begin();
    sol.t_of_v.assign(vn.size(), 0.0);
    for (std::size_t j = ic; j + 1 < vn.size(); ++j)
        sol.t_of_v[j + 1] = sol.t_of_v[j] + kronrod15(inv, vn[j], vn[j + 1]);
    for (std::size_t j = ic; j > 0; --j)
        sol.t_of_v[j - 1] = sol.t_of_v[j] - kronrod15(inv, vn[j - 1], vn[j]);

    if (iso.r > 0.0) {
        const double tail = iso.n * std::pow(iso.r, 1.0 / iso.n) / iso.c0;
        if (!std::isfinite(tail))
            throw std::runtime_error("solve_V: tail integral diverges");
        sol.a_end = sol.t_of_v.front() - tail;
        sol.b_end = sol.t_of_v.back() + tail;
    } else {
        sol.a_end = sol.t_of_v.front() - quad(inv, 1e-13, v_lo, 1e-13);
        sol.b_end = sol.t_of_v.back() + quad(inv, v_hi, 1.0 - 1e-13, 1e-13);
    }
    if (!std::isfinite(sol.a_end) || !std::isfinite(sol.b_end))
        throw std::runtime_error("solve_V: endpoint time not finite");
    return sol;
}

double WeightFunction::v_of_t(double t) const {
    if (t <= t_of_v.front()) {
        if (iso.r > 0.0) {
            const double x = std::fmax(t - a_end, 0.0) * iso.c0 / iso.n;
            return std::pow(x, double(iso.n));
        }
        return v_nodes.front();
    }
    if (t >= t_of_v.back()) {
        if (iso.r > 0.0) {
            const double x = std::fmax(b_end - t, 0.0) * iso.c0 / iso.n;
            return 1.0 - std::pow(x, double(iso.n));
        }
        return v_nodes.back();
    }
    auto it = std::upper_bound(t_of_v.begin(), t_of_v.end(), t);
    const std::size_t j = (it - t_of_v.begin()) - 1;
    auto inv = [this](double v) { return 1.0 / iso.eval(v); };
    double v = v_nodes[j] + (v_nodes[j + 1] - v_nodes[j]) *
                                (t - t_of_v[j]) /
                                std::fmax(t_of_v[j + 1] - t_of_v[j], 1e-300);
    for (int i = 0; i < 4; ++i) {
        const double f = t_of_v[j] + kronrod15(inv, v_nodes[j], v) - t;
        v = std::clamp(v - f * iso.eval(v), v_nodes[j], v_nodes[j + 1]);
    }
    return v;
}

double WeightFunction::eval(double t) const { return iso.eval(v_of_t(t)); }

double WeightFunction::eta_deriv(double t, bool from_left) const {
    const double v = v_of_t(t);
    return iso.deriv(v, from_left) * iso.eval(v);
}

WeightFunction build_eta(const TouchingIso& iso, const VSolution& v) {
    WeightFunction w;
    w.iso = iso;
    w.a_end = v.a_end;
    w.b_end = v.b_end;
    w.v_nodes = v.v_nodes;
    w.t_of_v = v.t_of_v;
    w.dminus = iso.deriv(iso.vm, true) * iso.p0;
    w.dplus = iso.deriv(iso.vm, false) * iso.p0;

    // endpoint behavior: measured log-log slope and ratio bounds
    const double span_a = w.t_of_v.front() - w.a_end;
    const double span_b = w.b_end - w.t_of_v.back();
    w.t_star = 0.5 * std::fmax(std::fmin(span_a, span_b), 1e-6);
    auto fit = [&](bool lower) {
        const double base = lower ? w.a_end : w.b_end;
        const double sgn = lower ? 1.0 : -1.0;
        const double t1 = base + sgn * 0.2 * w.t_star;
        const double t2 = base + sgn * w.t_star;
        const double e1 = w.eval(t1), e2 = w.eval(t2);
        const double slope = std::log(e2 / e1) / std::log(5.0) * 1.0;
        double lo = 1e300, hi = 0.0;
        for (int i = 1; i <= 20; ++i) {
            const double t = base + sgn * w.t_star * i / 20.0;
            const double ratio = w.eval(t) / std::pow(sgn * (t - base), slope);
            lo = std::fmin(lo, ratio);
            hi = std::fmax(hi, ratio);
        }
        return std::array<double, 3>{slope, lo, hi};
    };
    const auto fa = fit(true);
    w.exponent_a = fa[0];
    w.d1 = fa[1];
    w.d2 = fa[2];
    const auto fb = fit(false);
    w.exponent_b = fb[0];
    w.d3 = fb[1];
    w.d4 = fb[2];

    double d5 = 0.0;
    for (int i = 1; i < 400; ++i) {
        const double t = w.a_end + (w.b_end - w.a_end) * i / 400.0;
        if (std::fabs(t) < 1e-6) continue;  // kink
        const double et = w.eval(t);
        const double dp = w.eta_deriv(t, t < 0.0);
        d5 = std::fmax(d5, std::fabs(dp) *
                               std::fmin(t - w.a_end, w.b_end - t) / et);
    }
    w.d5 = d5;
    return w;
}

WeightFunction build_eta(const TouchingIso& iso) {
    return build_eta(iso, solve_V(iso));
}

double eta_mass(const WeightFunction& w, double t1, double t2) {
    auto tail_mass = [&](double ta, double tb, bool lower) {
        // exact integral of the closed-form tail piece: equals V there
        if (w.iso.r > 0.0) {
            auto V = [&](double t) {
                const double x = lower
                                     ? std::fmax(t - w.a_end, 0.0) * w.iso.c0 / w.iso.n
                                     : std::fmax(w.b_end - t, 0.0) * w.iso.c0 / w.iso.n;
                const double vv = std::pow(x, double(w.iso.n));
                return lower ? vv : 1.0 - vv;
            };
            return V(tb) - V(ta);
        }
        return w.eval(0.5 * (ta + tb)) * (tb - ta);
    };
    double total = 0.0;
    const double lo_sw = w.t_of_v.front(), hi_sw = w.t_of_v.back();
    double a = t1, b = t2;
    if (a < lo_sw) {
        total += tail_mass(a, std::fmin(b, lo_sw), true);
        a = lo_sw;
    }
    if (b > hi_sw) {
        total += tail_mass(std::fmax(a, hi_sw), b, false);
        b = hi_sw;
    }
    if (b > a)
        total += quad([&](double t) { return w.eval(t); }, a, b, 1e-12);
    return total;
}

ValidationReport validate_eta(const WeightFunction& w) {
    ValidationReport rep;
    double emin = 1e300;
    for (int i = 1; i < 200; ++i)
        emin = std::fmin(emin,
                         w.eval(w.a_end + (w.b_end - w.a_end) * i / 200.0));
    rep.checks.push_back({"eta1_positive", emin > 0.0, emin, 0.0, ""});

    const double expected = double(w.iso.n - 1);
    rep.checks.push_back({"eta2_endpoint_a",
                          std::fabs(w.exponent_a - expected) <= 0.05 &&
                              w.d1 > 0.0 && std::isfinite(w.d2),
                          w.exponent_a, expected, ""});
    rep.checks.push_back({"eta3_endpoint_b",
                          std::fabs(w.exponent_b - expected) <= 0.05 &&
                              w.d3 > 0.0 && std::isfinite(w.d4),
                          w.exponent_b, expected, ""});
    rep.checks.push_back({"eta4_derivative_bound",
                          std::isfinite(w.d5) && w.d5 < 1e9, w.d5, 0.0, ""});
    rep.checks.push_back({"eta4_kink", w.dminus >= w.dplus - 1e-12,
                          w.dminus - w.dplus, 0.0, ""});
    const double m1 = eta_mass(w, w.a_end, 0.0);
    const double mt = eta_mass(w, w.a_end, w.b_end);
    rep.checks.push_back({"eta5_mass_left", std::fabs(m1 - w.iso.vm) <= 1e-10,
                          m1, w.iso.vm, ""});
    rep.checks.push_back({"eta5_mass_total", std::fabs(mt - 1.0) <= 1e-10,
                          mt, 1.0, ""});
    return rep;
}

}  // namespace chg
