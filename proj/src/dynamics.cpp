#include "chg/dynamics.hpp"

#include <cmath>
#include <stdexcept>

#include <fftw3.h>

#include "chg/kernels.hpp"
#include "chg/rootfind.hpp"

namespace chg {

double Field2D::mass() const {
    double s = 0.0;
    for (double x : u) s += x;
    return s * h * h;
}

// Even cosine transform pair (REDFT10/REDFT01) with Neumann Laplacian symbols.
class Dct2D {
  public:
    Dct2D(int nx, int ny, double h) : nx_(nx), ny_(ny) {
        buf_.resize(std::size_t(nx) * ny);
        fwd_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(), FFTW_REDFT10,
                                FFTW_REDFT10, FFTW_ESTIMATE);
        inv_ = fftw_plan_r2r_2d(ny, nx, buf_.data(), buf_.data(), FFTW_REDFT01,
                                FFTW_REDFT01, FFTW_ESTIMATE);
        mu_.resize(buf_.size());
        for (int j = 0; j < ny; ++j)
            for (int i = 0; i < nx; ++i) {
                const double mx = (2.0 - 2.0 * std::cos(M_PI * i / nx)) / (h * h);
                const double my = (2.0 - 2.0 * std::cos(M_PI * j / ny)) / (h * h);
                mu_[std::size_t(j) * nx + i] = mx + my;
            }
    }
    ~Dct2D() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(inv_);
    }
    Dct2D(const Dct2D&) = delete;
    Dct2D& operator=(const Dct2D&) = delete;

    void forward(std::vector<double>& a) {
        buf_ = a;
        fftw_execute_r2r(fwd_, buf_.data(), buf_.data());
        a = buf_;
    }
    void inverse(std::vector<double>& a) {
        buf_ = a;
        fftw_execute_r2r(inv_, buf_.data(), buf_.data());
        const double s = 1.0 / (4.0 * nx_ * ny_);
        for (std::size_t i = 0; i < a.size(); ++i) a[i] = buf_[i] * s;
    }
    const std::vector<double>& mu() const { return mu_; }

  private:
    int nx_, ny_;
    std::vector<double> buf_, mu_;
    fftw_plan fwd_, inv_;
};

namespace {

// W' extended linearly outside the invariant box (quadratic-growth extension)
double dw_ext(const Potential& p, double s) {
    const double pad = 0.2 * (p.b - p.a);
    const double lo = p.a - pad, hi = p.b + pad;
    if (s < lo) return p.dw(lo) + p.ddw(lo) * (s - lo);
    if (s > hi) return p.dw(hi) + p.ddw(hi) * (s - hi);
    return p.dw(s);
}

double max_wpp(const Potential& p) {
    const double pad = 0.2 * (p.b - p.a);
    double m = 0.0;
    for (int i = 0; i <= 400; ++i) {
        const double s = p.a - pad + (p.b - p.a + 2 * pad) * i / 400.0;
        m = std::fmax(m, std::fabs(p.ddw(s)));
    }
    return m;
}

}  // namespace

Stepper::Stepper(const SimConfig& c, int nx, int ny, bool ch) : cfg(c) {
    const double h = 1.0 / nx;
    dct = std::make_shared<Dct2D>(nx, ny, h);
    stab = cfg.stab > 0.0 ? cfg.stab : max_wpp(cfg.pot);
    if (cfg.dt > 0.0) {
        dt = cfg.dt;
    } else if (ch) {
        // the stabilization makes the splitting unconditionally stable, so
        // the step is held well above the explicit h^2/8 scale
        dt = std::fmax(h * h / 8.0, 5e-4);
    } else {
        dt = std::fmin(h * h / (8.0 * cfg.eps * cfg.eps), 0.1 / stab);
    }
}

void Stepper::step_ac(Field2D& f) const {
    const std::size_t n = f.u.size();
    const auto& K = kernels::active();
    std::vector<double> wp(n);
    if (cfg.pot.kind == "quartic") {
        K.quartic_wprime(f.u.data(), wp.data(), n);
    } else {
        for (std::size_t i = 0; i < n; ++i) wp[i] = dw_ext(cfg.pot, f.u[i]);
    }
    double lam = 0.0;
    if (cfg.conserve) lam = K.sum(wp.data(), n) / double(n);
    std::vector<double> rhs(n);
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] = f.u[i] + dt * (stab * f.u[i] - wp[i] + lam);
    dct->forward(rhs);
    const auto& mu = dct->mu();
    // the energy carries eps^2 |grad u|^2 without a 1/2, so its gradient
    // flow diffuses with 2 eps^2
    const double e2 = 2.0 * cfg.eps * cfg.eps;
    for (std::size_t i = 0; i < n; ++i)
        rhs[i] /= 1.0 + dt * (stab + e2 * mu[i]);
    dct->inverse(rhs);
    f.u = rhs;
    for (double x : f.u)
        if (!std::isfinite(x))
            throw std::runtime_error("step_ac: non-finite value");
}

void Stepper::step_ch(Field2D& f) const {
    const std::size_t n = f.u.size();
    std::vector<double> wp(n);
    for (std::size_t i = 0; i < n; ++i) wp[i] = dw_ext(cfg.pot, f.u[i]);
    std::vector<double> uh = f.u;
    dct->forward(uh);
    dct->forward(wp);
    const auto& mu = dct->mu();
    const double e2 = 2.0 * cfg.eps * cfg.eps;
    for (std::size_t i = 0; i < n; ++i) {
        const double m = mu[i];
        uh[i] = (uh[i] * (1.0 + dt * stab * m) - dt * m * wp[i]) /
                (1.0 + dt * (e2 * m * m + stab * m));
    }
    dct->inverse(uh);
    f.u = uh;
    for (double x : f.u)
        if (!std::isfinite(x))
            throw std::runtime_error("step_ch: non-finite value");
}

double energy_F(const Field2D& f, double eps, const Potential& p) {
    const double h2 = f.h * f.h;
    double e = 0.0;
    if (p.kind == "quartic") {
        e = kernels::active().quartic_w_sum(f.u.data(), f.u.size()) * h2;
    } else {
        for (double x : f.u) e += p.w(x) * h2;
    }
    const double e2 = eps * eps;
    for (int j = 0; j < f.ny; ++j)
        for (int i = 0; i < f.nx; ++i) {
            const std::size_t k = std::size_t(j) * f.nx + i;
            if (i + 1 < f.nx) {
                const double d = (f.u[k + 1] - f.u[k]) / f.h;
                e += e2 * d * d * h2;
            }
            if (j + 1 < f.ny) {
                const double d = (f.u[k + f.nx] - f.u[k]) / f.h;
                e += e2 * d * d * h2;
            }
        }
    return e;
}

double h1_dual_norm(const Field2D& f) {
    Dct2D dct(f.nx, f.ny, f.h);
    std::vector<double> phi = f.u;
    dct.forward(phi);
    const auto& mu = dct.mu();
    for (std::size_t i = 0; i < phi.size(); ++i) phi[i] /= 1.0 + mu[i];
    dct.inverse(phi);
    double s = 0.0;
    for (std::size_t i = 0; i < phi.size(); ++i) s += f.u[i] * phi[i];
    s *= f.h * f.h;
    return std::sqrt(std::fmax(s, 0.0));
}

namespace {

double signed_dist(const std::string& geometry, double vm, double x, double y) {
    if (geometry == "disk") {
        const double r = std::sqrt(vm / M_PI);
        return std::hypot(x - 0.5, y - 0.5) - r;  // positive outside E0
    }
    if (geometry == "strip") return y - vm;
    throw std::invalid_argument("unknown geometry: " + geometry);
}

double geometry_perimeter(const std::string& geometry, double vm) {
    return geometry == "disk" ? 2.0 * M_PI * std::sqrt(vm / M_PI) : 1.0;
}

}  // namespace

WellPrepared well_prepared_init(const std::string& geometry, double vm,
                                double eps, const Profile& prof, double m,
                                int nx) {
    WellPrepared out;
    out.u.nx = nx;
    out.u.ny = nx;
    out.u.h = 1.0 / nx;
    out.u.u.resize(std::size_t(nx) * nx);
    const Potential& p = prof.pot;

    auto fill = [&](double shift) {
        for (int j = 0; j < nx; ++j)
            for (int i = 0; i < nx; ++i) {
                const double x = (i + 0.5) * out.u.h, y = (j + 0.5) * out.u.h;
                out.u.u[std::size_t(j) * nx + i] =
                    prof.eval((signed_dist(geometry, vm, x, y) - shift * eps) /
                              eps);
            }
        return out.u.mass() - m;
    };
    const double raw = fill(0.0);
    if (std::fabs(raw) > (p.b - p.a) / 10.0)
        throw std::runtime_error(
            "well_prepared_init: geometry/mass mismatch, residual " +
            std::to_string(raw));
    auto sec = secant([&](double s) { return fill(s); }, 0.0, 0.5, 1e-13);
    out.shift = sec ? *sec : 0.0;
    out.mass_residual = std::fabs(fill(out.shift));

    out.perimeter = geometry_perimeter(geometry, vm);
    const double cw = compute_cw(p);
    const double fe = energy_F(out.u, eps, p);
    out.energy_ratio = fe / (eps * 2.0 * cw * out.perimeter);
    out.implied_c = (fe - eps * 2.0 * cw * out.perimeter) / (eps * eps);
    return out;
}

SlowMotionReport slow_motion_experiment(const std::string& flow,
                                        const std::string& geometry,
                                        double vm, double m,
                                        const std::vector<double>& eps_list,
                                        double M, const Profile& prof) {
    SlowMotionReport rep;
    const Potential& p = prof.pot;
    for (double eps : eps_list) {
        const int nx = int(std::lround(4.0 / eps));
        WellPrepared wp = well_prepared_init(geometry, vm, eps, prof, m, nx);
        Field2D f = wp.u;
        SimConfig cfg;
        cfg.eps = eps;
        cfg.pot = p;
        const bool ch = flow == "ch";
        Stepper st(cfg, nx, nx, ch);
        const double T = M / eps;
        const int steps = int(std::ceil(T / st.dt));

        // sharp-interface reference
        std::vector<double> ref(f.u.size());
        for (int j = 0; j < nx; ++j)
            for (int i = 0; i < nx; ++i) {
                const double x = (i + 0.5) * f.h, y = (j + 0.5) * f.h;
                ref[std::size_t(j) * nx + i] =
                    signed_dist(geometry, vm, x, y) < 0.0 ? p.a : p.b;
            }
        auto measure = [&](SlowRunStats& s) {
            double l1 = 0.0;
            Field2D diff = f;
            for (std::size_t i = 0; i < f.u.size(); ++i) {
                diff.u[i] = f.u[i] - ref[i];
                l1 += std::fabs(diff.u[i]);
            }
            s.sup_l1 = std::fmax(s.sup_l1, l1 * f.h * f.h);
            if (ch) s.sup_dual = std::fmax(s.sup_dual, h1_dual_norm(diff));
        };

        SlowRunStats s;
        s.eps = eps;
        s.wellprep_c = wp.implied_c;
        s.steps = steps;
        const double m0 = f.mass();
        double e_prev = energy_F(f, eps, p);
        measure(s);
        const int sample_every = std::max(1, steps / 200);
        for (int k = 0; k < steps; ++k) {
            if (ch) st.step_ch(f);
            else st.step_ac(f);
            s.mass_drift = std::fmax(s.mass_drift, std::fabs(f.mass() - m0));
            if (k % sample_every == 0 || k == steps - 1) {
                measure(s);
                const double e_now = energy_F(f, eps, p);
                if (e_now > e_prev + 1e-10) {
                    s.energy_monotone = false;
                    s.energy_tol_violation =
                        std::fmax(s.energy_tol_violation, e_now - e_prev);
                }
                e_prev = e_now;
            }
        }
        rep.runs.push_back(s);
    }
    for (std::size_t i = 0; i + 1 < rep.runs.size(); ++i) {
        rep.l1_ratios.push_back(rep.runs[i].sup_l1 /
                                std::fmax(rep.runs[i + 1].sup_l1, 1e-300));
        rep.dual_ratios.push_back(rep.runs[i].sup_dual /
                                  std::fmax(rep.runs[i + 1].sup_dual, 1e-300));
    }
    return rep;
}

}  // namespace chg
