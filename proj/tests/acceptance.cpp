// Acceptance gate: one line per criterion, nonzero exit on any failure.

#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "chg/dynamics.hpp"
#include "chg/gamma2.hpp"
#include "chg/isoperimetry.hpp"
#include "chg/potential.hpp"
#include "chg/profile.hpp"
#include "chg/weight.hpp"
#include "chg/weighted1d.hpp"

using namespace chg;

namespace {

int failures = 0;

void report(int idx, const char* label, bool pass, const std::string& detail) {
    std::printf("criterion %2d %-34s %s  %s\n", idx, label,
                pass ? "PASS" : "FAIL", detail.c_str());
    if (!pass) ++failures;
}

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

// ---- 1: quartic constants --------------------------------------------------

void criterion1(const Potential& p, const Profile& prof) {
    const double cw = compute_cw(p);
    double sup = 0.0;
    for (int i = 0; i <= 4000; ++i) {
        const double t = -10.0 + i * 0.005;
        sup = std::fmax(sup, std::fabs(prof.eval(t) - std::tanh(t)));
    }
    const double cs = compute_csym(prof);
    const double tau = solve_tau_q1(1.0, 1.0, 2, p, prof);
    const bool pass = std::fabs(cw - 4.0 / 3.0) <= 1e-10 && sup <= 1e-8 &&
                      std::fabs(cs) <= 1e-10 &&
                      std::fabs(tau + 1.0 / 12.0) <= 1e-8;
    report(1, "quartic constants", pass,
           fmt("|c_W-4/3|=%.2e sup|z-tanh|=%.2e |c_sym|=%.2e |tau+1/12|=%.2e",
               std::fabs(cw - 4.0 / 3.0), sup, std::fabs(cs),
               std::fabs(tau + 1.0 / 12.0)));
}

// ---- 2: shift and moment identities ---------------------------------------

void criterion2(const Profile& prof_q) {
    std::mt19937 gen(1234);
    std::uniform_real_distribution<double> taus(-3.0, 3.0);
    const Profile prof_a = solve_profile(make_asymmetric(0.5));
    double worst_shift = 0.0;
    for (const Profile* pr : {&prof_q, &prof_a}) {
        const double i0 = compute_I0(pr->pot);
        const double ba = pr->pot.b - pr->pot.a;
        for (int k = 0; k < 20; ++k) {
            const double tau = taus(gen);
            worst_shift = std::fmax(
                worst_shift,
                std::fabs(shift_integral(*pr, tau) - (i0 - tau * ba)));
        }
    }
    double worst_moment = 0.0;
    const double cw = compute_cw(prof_a.pot);
    const double cs = compute_csym(prof_a);
    for (int k = 0; k < 10; ++k) {
        const double tau = -2.0 + 0.43 * k;
        const double mom = half_line_moment(prof_a, tau, true) +
                           half_line_moment(prof_a, tau, false);
        worst_moment = std::fmax(worst_moment, std::fabs(mom - (cs + tau * cw)));
    }
    const bool pass = worst_shift <= 1e-6 && worst_moment <= 1e-6;
    report(2, "shift/moment identity suite", pass,
           fmt("max shift err=%.2e max moment err=%.2e", worst_shift,
               worst_moment));
}

// ---- 3: cross-formula keystone --------------------------------------------

void criterion3(const Potential& p, const Profile& prof) {
    std::mt19937 gen(77);
    std::uniform_real_distribution<double> kap(-2.0, 2.0), per(0.5, 2.0);
    const double cw = compute_cw(p);
    double worst = 0.0;
    bool ok = true;
    for (int k = 0; k < 5; ++k) {
        const double kappa = kap(gen);
        const double P = per(gen);
        const int n = 2 + int(gen() % 2);
        const double slope = (n - 1) * kappa;
        const double r = 0.4;
        const double c0 = P / std::pow(r, double(n - 1) / n);
        try {
            const WeightFunction w = build_eta(
                build_touching_iso(P, slope, slope, c0, r, 0.5, n, {}));
            const double lam0 = 2.0 * cw * (n - 1) * kappa / (p.b - p.a);
            const double tau0 = solve_tau0(w, p, prof, lam0);
            const double rhs = theorem31_rhs(w, p, prof, lam0, tau0);
            const double pred = predict_F2_q1({kappa, P, n, 0.0}, p, prof);
            worst = std::fmax(worst, std::fabs(rhs - pred));
        } catch (const std::exception& ex) {
            ok = false;
        }
    }
    report(3, "theorem consistency keystone", ok && worst <= 1e-6,
           fmt("max |rhs - predict| = %.2e over 5 tuples", worst));
}

// ---- 4: flat-weight minimization ------------------------------------------

void criterion4(const Potential& p, const Profile& prof) {
    const WeightFunction w = build_eta(flat_iso(1.0, 0.5));
    const double eps = 1.0 / 256.0;
    const auto r = minimize_Geps(w, eps, 0.0, p, prof);
    const double cw = compute_cw(p);
    const bool pass =
        std::fabs(r.gap) <= 1e-3 * cw && std::fabs(r.lambda) <= 1e-6;
    report(4, "flat weight: gap and multiplier", pass,
           fmt("|gap|=%.2e (tol %.2e) |lambda|=%.2e", std::fabs(r.gap),
               1e-3 * cw, std::fabs(r.lambda)));
}

// ---- 5: smooth-slope weight ------------------------------------------------

void criterion5(const Potential& p, const Profile& prof) {
    const WeightFunction w =
        build_eta(build_touching_iso(1.0, 1.0, 1.0, 1.2, 0.05, 0.5, 2, {}));
    std::vector<MinimizerResult> ladder;
    for (double e : {0.04, 0.02, 0.01, 0.005})
        ladder.push_back(minimize_Geps(w, e, 0.0, p, prof));
    const double gap_ext =
        2.0 * ladder[3].gap - ladder[2].gap;
    const double pred = predict_F2_q1({1.0, 1.0, 2, 0.0}, p, prof);
    const auto lam = extract_lambda_limit(ladder, p, w);
    const double lam_target = 4.0 / 3.0;
    const double gap_rel = std::fabs(gap_ext - pred) / std::fabs(pred);
    const double lam_rel = std::fabs(lam.lambda0 - lam_target) / lam_target;
    const bool pass = gap_rel <= 0.05 && lam_rel <= 0.01;
    report(5, "smooth weight: gap + multiplier", pass,
           fmt("gap=%.6f predict=%.6f rel=%.3f; lambda0=%.5f rel=%.4f",
               gap_ext, pred, gap_rel, lam.lambda0, lam_rel));
}

// ---- 6: kinked weight ------------------------------------------------------

void criterion6(const Potential& p, const Profile& prof) {
    std::vector<RefSample> ref;
    for (int i = 1; i < 99; ++i)
        ref.push_back({i / 99.0, iso_analytic_rectangle(1.0, i / 99.0)});
    const double vm = 1.0 / M_PI;
    const WeightFunction w = build_eta(
        build_touching_iso(1.0, M_PI / 2.0, 0.0, 1.2, 0.05, vm, 2, ref));
    const double m = p.a * vm + p.b * (1.0 - vm);
    std::vector<MinimizerResult> ladder;
    for (double e : {0.04, 0.02, 0.01, 0.005})
        ladder.push_back(minimize_Geps(w, e, m, p, prof));
    const auto lam = extract_lambda_limit(ladder, p, w);
    const double cw = compute_cw(p);
    const double hi = 2.0 * cw * (M_PI / 2.0) * 1.0 / (p.b - p.a);
    const bool in_bracket =
        lam.lambda0 >= -1e-2 && lam.lambda0 <= hi + 1e-2;
    const double tau0 = solve_tau0(w, p, prof, lam.lambda0);
    const double rhs = theorem31_rhs(w, p, prof, lam.lambda0, tau0);
    const double gap_ext = 2.0 * ladder[3].gap - ladder[2].gap;
    const bool liminf_ok = gap_ext >= rhs - 0.05 * std::fabs(rhs);
    report(6, "kinked weight: bracket + liminf", in_bracket && liminf_ok,
           fmt("lambda0=%.5f in [0,%.5f]; gap=%.6f rhs=%.6f", lam.lambda0, hi,
               gap_ext, rhs));
}

// ---- 7: pixel isoperimetry suite ------------------------------------------

void criterion7() {
    const PixelDomain dom = rect_domain(4, 4);
    const double h2 = dom.h * dom.h;
    int violations = 0, checks = 0;
    std::vector<RegionMask> e0s;
    for (int k : {2, 4, 6, 8})
        e0s.push_back(iso_bruteforce(dom, k * h2).argmin);
    e0s.push_back(0b0000000000110011);  // corner block
    for (int k = 1; k < 16; ++k) {
        const double v = k * h2;
        const double unc = iso_bruteforce(dom, v).value;
        for (const RegionMask e0 : e0s) {
            double prev = 1e300;
            for (double delta : {1 * h2, 2 * h2, 4 * h2, 1.0}) {
                double con;
                try {
                    con = iso_bruteforce(dom, v, AlphaConstraint{e0, delta}).value;
                } catch (...) {
                    continue;  // infeasible for tiny delta; nothing to check
                }
                ++checks;
                if (con < unc - 1e-12) ++violations;       // local >= global
                if (con > prev + 1e-12) ++violations;      // nonincreasing in delta
                prev = con;
            }
        }
    }
    // anchor property: at v = |E0| with small delta the local value is P(E0)
    for (int k : {2, 4, 6, 8}) {
        const auto opt = iso_bruteforce(dom, k * h2);
        const double con =
            iso_bruteforce(dom, k * h2, AlphaConstraint{opt.argmin, h2}).value;
        ++checks;
        if (std::fabs(con - opt.value) > 1e-12) ++violations;
    }
    report(7, "pixel local-iso suite", violations == 0,
           fmt("%d violations over %d checks", violations, checks));
}

// ---- 8: level-set alpha property -------------------------------------------

void criterion8() {
    const PixelDomain dom = rect_domain(12, 12);
    const int n = 144;
    const double a = -1.0, b = 1.0, h2 = dom.h * dom.h;
    std::mt19937 gen(4242);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    int violations = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<uint8_t> e0(n, 0);
        for (auto& c : e0) c = gen() & 1u;
        const double delta = (1.0 + 20.0 * unif(gen)) * h2;
        std::vector<double> dev(n);
        double tot = 0.0;
        for (auto& d : dev) {
            d = unif(gen);
            tot += d * h2;
        }
        const double scale = (b - a) * delta / tot;
        std::vector<double> u(n);
        for (int i = 0; i < n; ++i) {
            const double ref = e0[i] ? a : b;
            u[i] = ref + (e0[i] ? 1.0 : -1.0) * dev[i] * scale;
        }
        const auto rep = level_set_alpha_check(u, e0, delta, dom, a, b);
        if (!rep.hypothesis_met || !rep.pass) ++violations;
    }
    report(8, "level-set alpha property (1000x)", violations == 0,
           fmt("%d violations", violations));
}

// ---- 9: local-profile derivative sweep -------------------------------------

void criterion9() {
    const auto strip = curvature_limit_sweep("strip", 0.4, {0.2, 0.1, 0.05, 0.02});
    const auto& sl = strip.points.back();
    const bool strip_ok = std::fabs(sl.d_minus) <= 0.05 && std::fabs(sl.d_plus) <= 0.05;

    const double vm = 0.2;
    const auto disk = curvature_limit_sweep("disk", vm, {0.05, 0.02, 0.01});
    const double target = 0.5 * std::sqrt(M_PI / vm);
    const auto& dl = disk.points.back();
    const bool disk_ok = std::fabs(dl.d_minus - target) <= 0.02 * target &&
                         std::fabs(dl.d_plus - target) <= 0.02 * target;
    report(9, "local-profile derivative sweep", strip_ok && disk_ok,
           fmt("strip D-=%.4f D+=%.4f; disk D-=%.4f D+=%.4f target=%.4f",
               sl.d_minus, sl.d_plus, dl.d_minus, dl.d_plus, target));
}

// ---- 10: slow-motion dynamics ladder ---------------------------------------

void criterion10(const Profile& prof) {
    const double vm_d = 0.2;
    const double m_d = -vm_d + (1.0 - vm_d);
    const auto ac = slow_motion_experiment("ac", "disk", vm_d, m_d,
                                           {0.08, 0.04, 0.02}, 1.0, prof);
    bool ac_ok = true;
    std::string det;
    for (const auto& r : ac.runs) {
        if (r.mass_drift > 1e-10 || !r.energy_monotone) ac_ok = false;
        det += fmt("L1(%.2g)=%.3e ", r.eps, r.sup_l1);
    }
    for (double q : ac.l1_ratios)
        if (q < 1.5) ac_ok = false;

    const double vm_s = 0.3;
    const double m_s = -vm_s + (1.0 - vm_s);
    const auto ch = slow_motion_experiment("ch", "strip", vm_s, m_s,
                                           {0.08, 0.04}, 1.0, prof);
    bool ch_ok = true;
    for (const auto& r : ch.runs) {
        if (r.mass_drift > 1e-12 || !r.energy_monotone) ch_ok = false;
        det += fmt("dual(%.2g)=%.3e ", r.eps, r.sup_dual);
    }
    if (!(ch.runs[1].sup_dual < ch.runs[0].sup_dual)) ch_ok = false;
    report(10, "slow-motion ladder", ac_ok && ch_ok, det);
}

}  // namespace

int main() {
    const Potential p = make_quartic();
    const Profile prof = solve_profile(p);
    criterion1(p, prof);
    criterion2(prof);
    criterion3(p, prof);
    criterion4(p, prof);
    criterion5(p, prof);
    criterion6(p, prof);
    criterion7();
    criterion8();
    criterion9();
    criterion10(prof);
    std::printf("%s (%d failing)\n", failures == 0 ? "ALL PASS" : "FAILURES",
                failures);
    return failures == 0 ? 0 : 1;
}
