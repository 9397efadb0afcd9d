#pragma once
// Adaptive Gauss-Kronrod quadrature on finite intervals.

#include <functional>

namespace chg {

struct QuadResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int evaluations = 0;
    bool converged = false;
};

// Adaptive bisection driven by the embedded G7/K15 error estimate.
// abs_tol is an absolute tolerance on the whole interval.
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi,
                     double abs_tol = 1e-12, int max_depth = 48);

// Convenience: value only.
double quad(const std::function<double(double)>& f, double lo, double hi,
            double abs_tol = 1e-12);

// Single (non-adaptive) K15 panel, used by cumulative integrators.
double kronrod15(const std::function<double(double)>& f, double lo, double hi,
                 double* err = nullptr);

}  // namespace chg
