#include "chg/weighted1d.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "chg/quadrature.hpp"

namespace chg {

std::vector<double> make_layer_grid(const WeightFunction& w, double eps) {
    const double A = w.a_end, B = w.b_end;
    const double span = B - A;
    const double h_base = span / 600.0;
    const double end_gap = 1e-6 * span;
    auto spacing = [&](double t) {
        double s = std::fmax(eps / 40.0, (std::fabs(t) - 10.0 * eps) / 6.0 +
                                             eps / 40.0);
        s = std::fmin(s, h_base);
        s = std::fmin(s, std::fmax(end_gap,
                                   0.15 * std::fmin(t - A, B - t)));
        return s;
    };
    std::vector<double> grid = {0.0};
    double t = 0.0;
    while (t + spacing(t) < B - 2.0 * end_gap) {
        t += spacing(t);
        grid.push_back(t);
    }
    grid.push_back(B - end_gap);
    t = 0.0;
    while (t - spacing(t) > A + 2.0 * end_gap) {
        t -= spacing(t);
        grid.push_back(t);
    }
    grid.push_back(A + end_gap);
    std::sort(grid.begin(), grid.end());
    return grid;
}

namespace {

struct Discrete {
    std::vector<double> t, eta, wlump;  // lumped trapezoid weights
    std::vector<double> he, ebar;       // element widths and mean eta
};

Discrete assemble(const WeightFunction& w, const std::vector<double>& grid) {
    Discrete d;
    d.t = grid;
    const std::size_t n = grid.size();
    d.eta.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.eta[i] = w.eval(grid[i]);
    d.he.resize(n - 1);
    d.ebar.resize(n - 1);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        d.he[e] = grid[e + 1] - grid[e];
        d.ebar[e] = 0.5 * (d.eta[e] + d.eta[e + 1]);
    }
    d.wlump.assign(n, 0.0);
    for (std::size_t e = 0; e + 1 < n; ++e) {
        d.wlump[e] += 0.5 * d.he[e];
        d.wlump[e + 1] += 0.5 * d.he[e];
    }
    return d;
}

// Thomas solve of the symmetric tridiagonal system (diag, off) x = rhs
std::vector<double> tridiag_solve(std::vector<double> diag,
                                  const std::vector<double>& off,
                                  std::vector<double> rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        const double m = off[i - 1] / diag[i - 1];
        diag[i] -= m * off[i - 1];
        rhs[i] -= m * rhs[i - 1];
    }
    std::vector<double> x(n);
    x[n - 1] = rhs[n - 1] / diag[n - 1];
    for (std::size_t i = n - 1; i > 0; --i)
        x[i - 1] = (rhs[i - 1] - off[i - 1] * x[i]) / diag[i - 1];
    return x;
}

struct KKT {
    std::vector<double> grad;  // gradient of the discrete energy
    double mass = 0.0;
};

KKT assemble_kkt(const Discrete& d, const std::vector<double>& v, double eps,
                 const Potential& p) {
    const std::size_t n = v.size();
    KKT k;
    k.grad.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        k.grad[i] = p.dw(v[i]) * d.eta[i] * d.wlump[i];
        k.mass += d.eta[i] * d.wlump[i] * v[i];
    }
    for (std::size_t e = 0; e + 1 < n; ++e) {
        const double f = 2.0 * eps * eps * d.ebar[e] / d.he[e];
        const double dv = v[e + 1] - v[e];
        k.grad[e] -= f * dv;
        k.grad[e + 1] += f * dv;
    }
    return k;
}

double kkt_residual(const KKT& k, const Discrete& d, double mu, double m) {
    double r = 0.0;
    for (std::size_t i = 0; i < k.grad.size(); ++i)
        r = std::fmax(r, std::fabs(k.grad[i] + mu * d.eta[i] * d.wlump[i]));
    return r + std::fabs(k.mass - m);
}

// One continuation stage: Newton with backtracking on the KKT residual.
void newton_stage(const Discrete& d, double eps, double m, const Potential& p,
                  std::vector<double>& v, double& mu,
                  const MinimizeOptions& opt, MinimizerResult& out) {
    const std::size_t n = v.size();
    KKT k = assemble_kkt(d, v, eps, p);
    double res = kkt_residual(k, d, mu, m);
    for (int it = 0; it < opt.max_newton; ++it) {
        out.residual_history.push_back(res);
        if (res <= opt.newton_tol) break;
        std::vector<double> diag(n), off(n - 1), c(n);
        for (std::size_t i = 0; i < n; ++i) {
            diag[i] = p.ddw(v[i]) * d.eta[i] * d.wlump[i];
            c[i] = d.eta[i] * d.wlump[i];
        }
        for (std::size_t e = 0; e + 1 < n; ++e) {
            const double f = 2.0 * eps * eps * d.ebar[e] / d.he[e];
            diag[e] += f;
            diag[e + 1] += f;
            off[e] = -f;
        }
        std::vector<double> r1(n);
        for (std::size_t i = 0; i < n; ++i) r1[i] = k.grad[i] + mu * c[i];
        const auto x1 = tridiag_solve(diag, off, r1);
        const auto x2 = tridiag_solve(diag, off, c);
        double cx1 = 0.0, cx2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            cx1 += c[i] * x1[i];
            cx2 += c[i] * x2[i];
        }
        const double dmu = ((k.mass - m) - cx1) / cx2;
        // dv = -x1 - dmu*x2
        double step = 1.0;
        std::vector<double> vn(n);
        for (int bt = 0; bt < 40; ++bt) {
            for (std::size_t i = 0; i < n; ++i)
                vn[i] = v[i] - step * (x1[i] + dmu * x2[i]);
            const double mun = mu + step * dmu;
            KKT kn = assemble_kkt(d, vn, eps, p);
            const double rn = kkt_residual(kn, d, mun, m);
            if (rn < res || rn <= opt.newton_tol) {
                v = vn;
                mu = mun;
                k = kn;
                res = rn;
                ++out.newton_iterations;
                break;
            }
            step *= 0.5;
            if (bt == 39)
                throw std::runtime_error(
                    "minimize_Geps: Newton divergence, residual " +
                    std::to_string(res));
        }
    }
    if (res > opt.newton_tol) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "minimize_Geps: Newton stalled, residual %.3e", res);
        throw std::runtime_error(buf);
    }
    out.el_residual = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        out.el_residual = std::fmax(
            out.el_residual, std::fabs(k.grad[i] + mu * d.eta[i] * d.wlump[i]));
    out.mass_residual = std::fabs(k.mass - m);
}

double interp_linear(const std::vector<double>& xs,
                     const std::vector<double>& ys, double x) {
    if (x <= xs.front()) return ys.front();
    if (x >= xs.back()) return ys.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t j = (it - xs.begin()) - 1;
    const double u = (x - xs[j]) / (xs[j + 1] - xs[j]);
    return ys[j] + u * (ys[j + 1] - ys[j]);
}

// three-point slope estimates for the cubic reconstruction
std::vector<double> node_slopes(const std::vector<double>& t,
                                const std::vector<double>& v) {
    const std::size_t n = t.size();
    std::vector<double> s(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            s[i] = (v[1] - v[0]) / (t[1] - t[0]);
        else if (i == n - 1)
            s[i] = (v[n - 1] - v[n - 2]) / (t[n - 1] - t[n - 2]);
        else {
            const double hl = t[i] - t[i - 1], hr = t[i + 1] - t[i];
            s[i] = (hr * (v[i] - v[i - 1]) / hl + hl * (v[i + 1] - v[i]) / hr) /
                   (hl + hr);
        }
    }
    return s;
}

}  // namespace

double energy_G(const WeightedField& f, double eps, const Potential& p,
                const WeightFunction& w) {
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < f.t.size(); ++i) {
        const double h = f.t[i + 1] - f.t[i];
        const double e0 = w.eval(f.t[i]), e1 = w.eval(f.t[i + 1]);
        e += 0.5 * h * (p.w(f.v[i]) * e0 + p.w(f.v[i + 1]) * e1);
        const double dv = (f.v[i + 1] - f.v[i]) / h;
        e += eps * eps * dv * dv * 0.5 * (e0 + e1) * h;
    }
    return e;
}

double energy_G_accurate(const WeightedField& f, double eps, const Potential& p,
                         const WeightFunction& w) {
    const auto slope = node_slopes(f.t, f.v);
    double e = 0.0;
    for (std::size_t i = 0; i + 1 < f.t.size(); ++i) {
        const double x0 = f.t[i], x1 = f.t[i + 1], h = x1 - x0;
        const double v0 = f.v[i], v1 = f.v[i + 1], s0 = slope[i], s1 = slope[i + 1];
        auto vh = [&](double x) {
            const double u = (x - x0) / h, u2 = u * u, u3 = u2 * u;
            return v0 * (2 * u3 - 3 * u2 + 1) + v1 * (-2 * u3 + 3 * u2) +
                   h * (s0 * (u3 - 2 * u2 + u) + s1 * (u3 - u2));
        };
        auto vhd = [&](double x) {
            const double u = (x - x0) / h, u2 = u * u;
            return (v0 * (6 * u2 - 6 * u) + v1 * (-6 * u2 + 6 * u)) / h +
                   s0 * (3 * u2 - 4 * u + 1) + s1 * (3 * u2 - 2 * u);
        };
        e += kronrod15(
            [&](double x) {
                const double dp = vhd(x);
                return (p.w(vh(x)) + eps * eps * dp * dp) * w.eval(x);
            },
            x0, x1);
    }
    return e;
}

double gamma_limit_value(const Potential& p, const WeightFunction& w,
                         double t_jump) {
    return 2.0 * compute_cw(p) * w.eval(t_jump);
}

double gamma_limit_value(const Potential& p, const WeightFunction& w,
                         const WeightedField& f) {
    int jumps = 0;
    double loc = 0.0;
    for (std::size_t i = 0; i + 1 < f.v.size(); ++i) {
        const bool lo0 = std::fabs(f.v[i] - p.a) < 1e-9;
        const bool hi0 = std::fabs(f.v[i] - p.b) < 1e-9;
        if (!lo0 && !hi0)
            throw std::invalid_argument("gamma_limit_value: field not two-valued");
        const bool lo1 = std::fabs(f.v[i + 1] - p.a) < 1e-9;
        if (lo0 != lo1) {
            ++jumps;
            loc = 0.5 * (f.t[i] + f.t[i + 1]);
        }
    }
    if (jumps != 1)
        throw std::invalid_argument("gamma_limit_value: expected a single jump");
    return gamma_limit_value(p, w, loc);
}

MinimizerResult minimize_Geps(const WeightFunction& w, double eps, double m,
                              const Potential& p, const Profile& prof,
                              const MinimizeOptions& opt_in) {
    MinimizeOptions opt = opt_in;
    if (opt.locality_radius <= 0.0) opt.locality_radius = 0.1 * (p.b - p.a);
    std::vector<double> ladder;
    for (double e = opt.eps0; e > eps * 1.0001; e *= 0.5) ladder.push_back(e);
    ladder.push_back(eps);

    MinimizerResult out;
    std::vector<double> grid = make_layer_grid(w, ladder.front());
    Discrete d = assemble(w, grid);
    std::vector<double> v(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        v[i] = prof.eval(grid[i] / ladder.front());
    double mu = 0.0;

    for (std::size_t stage = 0; stage < ladder.size(); ++stage) {
        const double e = ladder[stage];
        if (stage > 0) {
            std::vector<double> ng = make_layer_grid(w, e);
            std::vector<double> nv(ng.size());
            for (std::size_t i = 0; i < ng.size(); ++i)
                nv[i] = interp_linear(grid, v, ng[i]);
            grid = std::move(ng);
            v = std::move(nv);
            d = assemble(w, grid);
        }
        newton_stage(d, e, m, p, v, mu, opt, out);
    }

    out.eps = eps;
    out.field.t = grid;
    out.field.v = v;
    out.lambda = mu / eps;
    out.energy = energy_G(out.field, eps, p, w);
    out.energy_acc = energy_G_accurate(out.field, eps, p, w);
    out.first_order = out.energy_acc / eps;
    out.gap = (out.first_order - 2.0 * compute_cw(p) * w.eval(0.0)) / eps;

    // crossing of the central zero, eps-rescaled
    double tc = 0.0;
    for (std::size_t i = 0; i + 1 < v.size(); ++i)
        if ((v[i] - p.c) * (v[i + 1] - p.c) <= 0.0 && v[i] != v[i + 1]) {
            tc = grid[i] + (p.c - v[i]) * (grid[i + 1] - grid[i]) /
                               (v[i + 1] - v[i]);
            break;
        }
    out.tau_crossing = tc / eps;

    double l1 = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const double v0 = grid[i] < 0.0 ? p.a : p.b;
        l1 += std::fabs(v[i] - v0) * d.eta[i] * d.wlump[i];
    }
    out.local = l1 <= opt.locality_radius;
    return out;
}

LambdaLimit extract_lambda_limit(const std::vector<MinimizerResult>& ladder,
                                 const Potential& p, const WeightFunction& w) {
    if (ladder.size() < 3)
        throw std::invalid_argument("extract_lambda_limit: need >= 3 points");
    LambdaLimit out;
    const std::size_t n = ladder.size();
    const double l1 = ladder[n - 2].lambda, l2 = ladder[n - 1].lambda;
    const double e1 = ladder[n - 2].eps, e2 = ladder[n - 1].eps;
    // monotone tail -> linear-in-eps extrapolation, else report the raw value
    const double d_prev = ladder[n - 2].lambda - ladder[n - 3].lambda;
    const double d_last = l2 - l1;
    if (d_prev == 0.0 || d_last == 0.0 || d_prev * d_last >= 0.0) {
        out.lambda0 = l2 + (l2 - l1) * e2 / (e1 - e2);
        out.extrapolated = true;
    } else {
        out.lambda0 = l2;
    }
    const double cw = compute_cw(p);
    const double p0 = w.eval(0.0);
    out.bracket_lo = 2.0 * cw * w.dplus / ((p.b - p.a) * p0);
    out.bracket_hi = 2.0 * cw * w.dminus / ((p.b - p.a) * p0);
    out.margin = std::fmin(out.lambda0 - out.bracket_lo,
                           out.bracket_hi - out.lambda0);
    out.in_bracket = out.margin >= -1e-2;
    return out;
}

double rescaled_profile_distance(const MinimizerResult& r, const Profile& prof,
                                 double tau0, double l) {
    if (l * r.eps > std::fmax(std::fabs(r.field.t.front()),
                              r.field.t.back()))
        throw std::invalid_argument(
            "rescaled_profile_distance: window exceeds grid coverage");
    double d = 0.0;
    const int n = std::max(2, int(200 * l) + 1);
    for (int i = 0; i <= n; ++i) {
        const double s = -l + 2.0 * l * i / n;
        const double ve = interp_linear(r.field.t, r.field.v, r.eps * s);
        d = std::fmax(d, std::fabs(ve - prof.eval(s - tau0)));
    }
    return d;
}

double solve_tau0(const WeightFunction& w, const Potential& p,
                  const Profile& prof, double lambda0) {
    const double inteta = eta_mass(w, w.a_end, w.b_end);
    const double s0 = shift_integral(prof, 0.0);
    return (s0 - lambda0 * inteta / (p.wpp_a() * w.eval(0.0))) / (p.b - p.a);
}

double theorem31_rhs(const WeightFunction& w, const Potential& p,
                     const Profile& prof, double lambda0, double tau0) {
    double v = 2.0 * w.dminus * half_line_moment(prof, tau0, true) +
               2.0 * w.dplus * half_line_moment(prof, tau0, false);
    if (p.q == 1.0)
        v += lambda0 * lambda0 / (2.0 * p.wpp_a()) *
             eta_mass(w, w.a_end, w.b_end);
    return v;
}

double second_order_gap(const MinimizerResult& r, const Potential& p,
                        const WeightFunction& w) {
    return (r.energy_acc / r.eps - 2.0 * compute_cw(p) * w.eval(0.0)) / r.eps;
}

}  // namespace chg
