#include "chg/gamma2.hpp"

#include <cmath>
#include <stdexcept>

namespace chg {

double predict_F2_q1(const MinimizerGeometry& g, const Potential& p,
                     const Profile& prof) {
    if (p.q != 1.0) throw std::invalid_argument("predict_F2_q1: requires q = 1");
    const double cw = compute_cw(p);
    const double csym = compute_csym(prof);
    const double tau = solve_tau_q1(g.perimeter, g.kappa, g.n, p, prof);
    const double nm1 = g.n - 1;
    const double ba = p.b - p.a;
    return 2.0 * cw * cw * nm1 * nm1 * g.kappa * g.kappa /
               (p.wpp_a() * ba * ba) +
           2.0 * (csym + cw * tau) * nm1 * g.kappa * g.perimeter;
}

double predict_F2_qlt1(const MinimizerGeometry& g, const Potential& p,
                       const Profile& prof) {
    if (!(p.q < 1.0))
        throw std::invalid_argument("predict_F2_qlt1: requires q < 1");
    const double cw = compute_cw(p);
    const double csym = compute_csym(prof);
    const double tau = solve_tau_qlt1(prof);
    return 2.0 * (csym + cw * tau) * (g.n - 1) * g.kappa * g.perimeter;
}

double iso_derivative_relation(double kappa, int n) { return (n - 1) * kappa; }

Selection select_minimizer(const std::vector<MinimizerGeometry>& candidates,
                           const Potential& p, const Profile& prof) {
    if (candidates.empty())
        throw std::invalid_argument("select_minimizer: empty candidate list");
    Selection sel;
    for (const auto& g : candidates)
        sel.values.push_back(p.q == 1.0 ? predict_F2_q1(g, p, prof)
                                        : predict_F2_qlt1(g, p, prof));
    for (std::size_t i = 1; i < sel.values.size(); ++i) {
        if (sel.values[i] < sel.values[sel.index] - 1e-12) sel.index = i;
        else if (std::fabs(sel.values[i] - sel.values[sel.index]) <= 1e-12)
            sel.tie = true;
    }
    return sel;
}

}  // namespace chg
