#include "chg/rootfind.hpp"

#include <cmath>

namespace chg {

std::optional<double> bisect(const std::function<double(double)>& f, double lo,
                             double hi, double xtol, int max_iter) {
    double flo = f(lo), fhi = f(hi);
    if (!std::isfinite(flo) || !std::isfinite(fhi)) return std::nullopt;
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0.0) return std::nullopt;
    for (int it = 0; it < max_iter && (hi - lo) > xtol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if (flo * fm < 0.0) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

std::optional<double> secant(const std::function<double(double)>& f, double x0,
                             double x1, double ftol, int max_iter) {
    double f0 = f(x0), f1 = f(x1);
    for (int it = 0; it < max_iter; ++it) {
        if (std::fabs(f1) <= ftol) return x1;
        const double denom = f1 - f0;
        if (denom == 0.0) break;
        const double x2 = x1 - f1 * (x1 - x0) / denom;
        if (!std::isfinite(x2)) break;
        x0 = x1;
        f0 = f1;
        x1 = x2;
        f1 = f(x1);
    }
    if (std::fabs(f1) <= 1e3 * ftol) return x1;
    // fall back: try to bracket around the last iterates
    double lo = std::fmin(x0, x1), hi = std::fmax(x0, x1);
    const double pad = std::fmax(1.0, hi - lo);
    return bisect(f, lo - pad, hi + pad, 1e-14);
}

}  // namespace chg
