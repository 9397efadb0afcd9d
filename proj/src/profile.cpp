#include "chg/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "chg/quadrature.hpp"
#include "chg/rootfind.hpp"

namespace chg {

namespace {

constexpr double kZcut = 1e-10;   // distance from the wells covered by the table
constexpr double kGridDt = 0.005; // uniform t-grid spacing

double hermite(double x0, double x1, double f0, double f1, double d0, double d1,
               double x) {
    const double h = x1 - x0;
    const double u = (x - x0) / h;
    const double u2 = u * u, u3 = u2 * u;
    return f0 * (2 * u3 - 3 * u2 + 1) + f1 * (-2 * u3 + 3 * u2) +
           h * (d0 * (u3 - 2 * u2 + u) + d1 * (u3 - u2));
}

// ratio-10 Richardson on samples r(h), h = 10^{-k}, removing O(h) twice
double limit_ratio10(const std::vector<double>& r) {
    std::vector<double> v = r;
    for (int lvl = 0; lvl < 2 && v.size() > 1; ++lvl) {
        std::vector<double> nxt;
        for (std::size_t i = 0; i + 1 < v.size(); ++i)
            nxt.push_back((10.0 * v[i + 1] - v[i]) / 9.0);
        v = nxt;
    }
    return v.back();
}

// time spent between the well and the first table node, q < 1 only
double saturation_tail_time(const Potential& p, bool upper) {
    const double q = p.q;
    const double xmax = std::pow(kZcut, (1.0 - q) / 2.0);
    const double ell = upper ? p.ell_b : p.ell_a;
    auto f = [&](double x) {
        const double w = std::pow(x, 2.0 / (1.0 - q));
        // below ~1e-12 the offset is lost to rounding in s = well -+ w and
        // W(s) evaluates to 0; use the well limit W ~ ell |s - well|^{q+1}
        if (w < 1e-9) return (2.0 / (1.0 - q)) / std::sqrt(ell);
        const double s = upper ? p.b - w : p.a + w;
        const double g = std::sqrt(p.w(s)) / std::pow(w, (q + 1.0) / 2.0);
        return (2.0 / (1.0 - q)) / g;
    };
    return quad(f, 0.0, xmax, 1e-13);
}

}  // namespace

double Profile::eval(double tt) const {
    if (tt >= t.front() && tt <= t.back()) {
        const double h = t[1] - t[0];
        std::size_t i = static_cast<std::size_t>((tt - t.front()) / h);
        if (i + 1 >= t.size()) i = t.size() - 2;
        return std::clamp(
            hermite(t[i], t[i + 1], z[i], z[i + 1], dz[i], dz[i + 1], tt),
            pot.a, pot.b);
    }
    if (tt > t.back()) {
        if (exp_tails) return pot.b - amp_b * std::exp(-rate_b * tt);
        if (tt >= t_sat_hi) return pot.b;
        return pot.b - pow_amp_b * std::pow(t_sat_hi - tt, pow_exp);
    }
    if (exp_tails) return pot.a + amp_a * std::exp(rate_a * tt);
    if (tt <= t_sat_lo) return pot.a;
    return pot.a + pow_amp_a * std::pow(tt - t_sat_lo, pow_exp);
}

double Profile::deriv(double tt) const {
    const double v = eval(tt);
    const double w = pot.w(v);
    return w > 0.0 ? std::sqrt(w) : 0.0;
}

Profile solve_profile(const Potential& p, double T, double tol) {
    Profile prof;
    prof.pot = p;
    const double a = p.a, b = p.b, c = p.c;
    const double d0 = 0.05 * (b - a);

    // dense z-nodes: geometric near the wells, uniform in the middle
    std::vector<double>& s = prof.s_nodes;
    const int m_geo = 800, m_mid = 1200;
    for (int k = 0; k <= m_geo; ++k)
        s.push_back(a + kZcut * std::pow(d0 / kZcut, double(k) / m_geo));
    for (int k = 1; k < m_mid; ++k)
        s.push_back(a + d0 + (b - a - 2 * d0) * double(k) / m_mid);
    for (int k = m_geo; k >= 0; --k)
        s.push_back(b - kZcut * std::pow(d0 / kZcut, double(k) / m_geo));
    s.push_back(c);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end(),
                        [](double x, double y) { return std::fabs(x - y) < 1e-14; }),
            s.end());

    auto inv_speed = [&p](double x) { return 1.0 / std::sqrt(p.w(x)); };
    const std::size_t ic = std::lower_bound(s.begin(), s.end(), c) - s.begin();
    std::vector<double>& ts = prof.t_of_s;
    ts.assign(s.size(), 0.0);
    for (std::size_t j = ic; j + 1 < s.size(); ++j)
        ts[j + 1] = ts[j] + kronrod15(inv_speed, s[j], s[j + 1]);
    for (std::size_t j = ic; j > 0; --j)
        ts[j - 1] = ts[j] - kronrod15(inv_speed, s[j - 1], s[j]);

    if (ts.back() > 1e4)
        throw std::runtime_error("solve_profile: integration stall near well b "
                                 "(sqrt(W) too flat for tolerance)");
    if (ts.front() < -1e4)
        throw std::runtime_error("solve_profile: integration stall near well a "
                                 "(sqrt(W) too flat for tolerance)");

    prof.t_lo = std::fmax(ts.front(), -T);
    prof.t_hi = std::fmin(ts.back(), T);

    // invert the table onto a uniform t-grid
    const int n = std::max(16, int(std::ceil((prof.t_hi - prof.t_lo) / kGridDt)));
    for (int i = 0; i <= n; ++i) {
        const double tt = prof.t_lo + (prof.t_hi - prof.t_lo) * double(i) / n;
        auto it = std::lower_bound(ts.begin(), ts.end(), tt);
        std::size_t j = std::clamp<std::size_t>(it - ts.begin(), 1, ts.size() - 1) - 1;
        double zz = s[j] + (s[j + 1] - s[j]) * (tt - ts[j]) /
                               std::fmax(ts[j + 1] - ts[j], 1e-300);
        for (int it2 = 0; it2 < 4; ++it2) {
            const double f = ts[j] + kronrod15(inv_speed, s[j], zz) - tt;
            zz = std::clamp(zz - f * std::sqrt(p.w(zz)), s[j], s[j + 1]);
        }
        prof.t.push_back(tt);
        prof.z.push_back(zz);
        prof.dz.push_back(std::sqrt(std::fmax(p.w(zz), 0.0)));
    }
    (void)tol;

    if (p.q == 1.0) {
        prof.exp_tails = true;
        std::vector<double> ra, rb;
        for (int k = 3; k <= 7; ++k) {
            const double h = std::pow(10.0, -k);
            ra.push_back(std::sqrt(p.w(a + h)) / h);
            rb.push_back(std::sqrt(p.w(b - h)) / h);
        }
        prof.rate_a = limit_ratio10(ra);
        prof.rate_b = limit_ratio10(rb);
        prof.amp_a = (prof.z.front() - a) * std::exp(-prof.rate_a * prof.t_lo);
        prof.amp_b = (prof.pot.b - prof.z.back()) * std::exp(prof.rate_b * prof.t_hi);
    } else {
        prof.saturates = true;
        prof.t_sat_hi = ts.back() + saturation_tail_time(p, true);
        prof.t_sat_lo = ts.front() - saturation_tail_time(p, false);
        prof.pow_exp = 2.0 / (1.0 - p.q);
        prof.pow_amp_b = (b - prof.z.back()) /
                         std::pow(prof.t_sat_hi - prof.t_hi, prof.pow_exp);
        prof.pow_amp_a = (prof.z.front() - a) /
                         std::pow(prof.t_lo - prof.t_sat_lo, prof.pow_exp);
    }
    return prof;
}

double compute_cw(const Potential& p) {
    auto sw = [&p](double s) { return std::sqrt(p.w(s)); };
    if (p.q == 1.0) return quad(sw, p.a, p.b, 1e-13);
    // substituted well pieces for the degenerate family
    const double d0 = 0.05 * (p.b - p.a);
    auto well_piece = [&p, d0](bool upper) {
        const double q = p.q;
        const double xmax = std::pow(d0, (1.0 - q) / 2.0);
        const double ell = upper ? p.ell_b : p.ell_a;
        auto f = [&](double x) {
            const double w = std::pow(x, 2.0 / (1.0 - q));
            const double s = upper ? p.b - w : p.a + w;
            // rounding in s kills W(s) for offsets below ~1e-12; use the
            // well limit W ~ ell |s - well|^{q+1} there
            const double g = w < 1e-9 ? std::sqrt(ell)
                                      : std::sqrt(p.w(s)) /
                                            std::pow(w, (q + 1.0) / 2.0);
            // sqrt(W) dw = g w^{(q+1)/2} dw; exponent collapses to x^{2/(1-q)}... x^{?}
            // dw = (2/(1-q)) x^{(1+q)/(1-q)} dx, w^{(q+1)/2} = x^{(q+1)/(1-q)}
            return g * (2.0 / (1.0 - q)) *
                   std::pow(x, (1.0 + q) / (1.0 - q) + (q + 1.0) / (1.0 - q));
        };
        return quad(f, 0.0, xmax, 1e-13);
    };
    return well_piece(false) + quad(sw, p.a + d0, p.b - d0, 1e-13) + well_piece(true);
}

double compute_I0(const Potential& p) {
    auto left = [&p](double s) { return (s - p.a) / std::sqrt(p.w(s)); };
    auto right = [&p](double s) { return (s - p.b) / std::sqrt(p.w(s)); };
    return quad(left, p.a, p.c, 1e-13) + quad(right, p.c, p.b, 1e-13);
}

namespace {

// t(s) from the profile's cumulative table (Hermite with dt/ds = 1/sqrt(W))
double t_of(const Profile& prof, double s) {
    const auto& sn = prof.s_nodes;
    const auto& ts = prof.t_of_s;
    if (s <= sn.front()) return ts.front();
    if (s >= sn.back()) return ts.back();
    auto it = std::upper_bound(sn.begin(), sn.end(), s);
    const std::size_t j = (it - sn.begin()) - 1;
    auto invs = [&](double x) { return 1.0 / std::sqrt(prof.pot.w(x)); };
    return hermite(sn[j], sn[j + 1], ts[j], ts[j + 1], invs(sn[j]), invs(sn[j + 1]), s);
}

}  // namespace

double compute_csym(const Profile& prof) {
    if (!prof.exp_tails && !prof.saturates)
        throw std::runtime_error("compute_csym: profile has no tail model");
    const Potential& p = prof.pot;
    auto f = [&](double s) { return std::sqrt(p.w(s)) * t_of(prof, s); };
    double v = quad(f, prof.s_nodes.front(), prof.s_nodes.back(), 1e-13);
    if (prof.exp_tails) {
        // W(z(t)) ~ (ell/2) amp^2 e^{-2 r |t|} beyond the table
        const double Tb = prof.t_of_s.back(), Ta = prof.t_of_s.front();
        const double rb = prof.rate_b, ra = prof.rate_a;
        const double cb = 0.5 * p.ell_b * prof.amp_b * prof.amp_b;
        const double ca = 0.5 * p.ell_a * prof.amp_a * prof.amp_a;
        v += cb * std::exp(-2 * rb * Tb) * (Tb / (2 * rb) + 1.0 / (4 * rb * rb));
        v += ca * std::exp(2 * ra * Ta) * (Ta / (2 * ra) - 1.0 / (4 * ra * ra));
    }
    return v;
}

namespace {

// int_{-inf}^{x} (z - a) du, analytic below the grid
double lower_mass(const Profile& prof, double x) {
    const Potential& p = prof.pot;
    double lo = prof.t.front();
    double v = 0.0;
    if (prof.exp_tails) {
        const double cap = std::fmin(x, lo);
        v += prof.amp_a / prof.rate_a * std::exp(prof.rate_a * cap);
        if (x <= lo) return v;
    } else {
        lo = prof.t_sat_lo;
        if (x <= lo) return 0.0;
    }
    v += quad([&](double u) { return prof.eval(u) - p.a; }, lo, x, 1e-12);
    return v;
}

// int_{x}^{inf} (z - b) du, analytic above the grid
double upper_mass(const Profile& prof, double x) {
    const Potential& p = prof.pot;
    double hi = prof.t.back();
    double v = 0.0;
    if (prof.exp_tails) {
        const double cap = std::fmax(x, hi);
        v -= prof.amp_b / prof.rate_b * std::exp(-prof.rate_b * cap);
        if (x >= hi) return v;
    } else {
        hi = prof.t_sat_hi;
        if (x >= hi) return 0.0;
    }
    v += quad([&](double u) { return prof.eval(u) - p.b; }, x, hi, 1e-12);
    return v;
}

}  // namespace

double shift_integral(const Profile& prof, double tau) {
    if (!prof.exp_tails && !prof.saturates)
        throw std::runtime_error("shift_integral: profile has no tail model");
    // substitute u = t - tau; sgn flips at u = -tau
    return lower_mass(prof, -tau) + upper_mass(prof, -tau);
}

double solve_tau_q1(double P, double kappa, int n, const Potential& p,
                    const Profile& prof) {
    if (P <= 0.0) throw std::invalid_argument("solve_tau_q1: P must be positive");
    if (p.q != 1.0) throw std::invalid_argument("solve_tau_q1: requires q = 1");
    const double cw = compute_cw(p);
    const double rhs = 2.0 * cw * (n - 1) * kappa / (p.wpp_a() * (p.b - p.a));
    const double s0 = shift_integral(prof, 0.0);
    return (s0 - rhs / P) / (p.b - p.a);
}

double solve_tau_qlt1(const Profile& prof) {
    if (prof.pot.q >= 1.0)
        throw std::invalid_argument("solve_tau_qlt1: requires q < 1");
    const double s0 = shift_integral(prof, 0.0);
    return s0 / (prof.pot.b - prof.pot.a);
}

double central_zero_shifted(const Potential& p, double mu) {
    auto f = [&](double s) { return p.dw(s) + mu; };
    const double half = 0.25 * (p.b - p.a);
    auto r = bisect(f, p.c - half, p.c + half, 1e-12);
    if (!r) r = bisect(f, p.a + 1e-9, p.b - 1e-9, 1e-12);
    if (!r) throw std::runtime_error("central_zero_shifted: multiplier too large");
    return *r;
}

double half_line_moment(const Profile& prof, double tau, bool left) {
    const Potential& p = prof.pot;
    // int W(z(u)) (u + tau) du over u < -tau (left) or u > -tau
    auto zf = [&](double s) { return std::sqrt(p.w(s)) * (t_of(prof, s) + tau); };
    const double split = -tau;
    if (left) {
        double v = 0.0;
        double lo = prof.t.front();
        if (prof.exp_tails) {
            const double r = prof.rate_a;
            const double ca = 0.5 * p.ell_a * prof.amp_a * prof.amp_a;
            const double x = std::fmin(split, lo);
            v += ca * std::exp(2 * r * x) * ((x + tau) / (2 * r) - 1.0 / (4 * r * r));
            if (split <= lo) return v;
        } else {
            lo = prof.t_sat_lo;
            if (split <= lo) return 0.0;
        }
        const double s_lo = prof.s_nodes.front();
        const double s_hi = prof.eval(split);
        return v + quad(zf, s_lo, s_hi, 1e-12);
    }
    double v = 0.0;
    double hi = prof.t.back();
    if (prof.exp_tails) {
        const double r = prof.rate_b;
        const double cb = 0.5 * p.ell_b * prof.amp_b * prof.amp_b;
        const double x = std::fmax(split, hi);
        v += cb * std::exp(-2 * r * x) * ((x + tau) / (2 * r) + 1.0 / (4 * r * r));
        if (split >= hi) return v;
    } else {
        hi = prof.t_sat_hi;
        if (split >= hi) return 0.0;
    }
    const double s_lo = prof.eval(split);
    const double s_hi = prof.s_nodes.back();
    return v + quad(zf, s_lo, s_hi, 1e-12);
}

}  // namespace chg
