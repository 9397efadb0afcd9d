#pragma once
// Scalar root finding: bisection refinement and a guarded secant.

#include <functional>
#include <optional>

namespace chg {

// Root of f in [lo, hi]; requires a sign change. Bisects to |hi-lo| <= xtol.
std::optional<double> bisect(const std::function<double(double)>& f, double lo,
                             double hi, double xtol = 1e-12, int max_iter = 200);

// Secant iteration falling back to bisection on the last bracketing pair.
std::optional<double> secant(const std::function<double(double)>& f, double x0,
                             double x1, double ftol = 1e-13, int max_iter = 100);

}  // namespace chg
