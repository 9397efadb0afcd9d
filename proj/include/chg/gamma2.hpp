#pragma once
// Closed-form second-order limit values and the curvature selection rule.

#include <cstddef>
#include <vector>

#include "chg/potential.hpp"
#include "chg/profile.hpp"

namespace chg {

struct MinimizerGeometry {
    double kappa = 0.0;   // mean curvature, outward convention
    double perimeter = 0.0;
    int n = 2;
    double m = 0.0;       // mass; vm = (b - m)/(b - a)
};

// q = 1: 2 c_W^2 (n-1)^2 kappa^2 / (W''(a) (b-a)^2)
//        + 2 (c_sym + c_W tau_u) (n-1) kappa P, with tau_u from the q=1 rule.
double predict_F2_q1(const MinimizerGeometry& g, const Potential& p,
                     const Profile& prof);

// q < 1: the single perimeter term with tau_u from the zero-shift rule.
double predict_F2_qlt1(const MinimizerGeometry& g, const Potential& p,
                       const Profile& prof);

// derivative relation I'(vm) = (n-1) kappa
double iso_derivative_relation(double kappa, int n);

struct Selection {
    std::size_t index = 0;
    bool tie = false;
    std::vector<double> values;
};

// Ranks equal-perimeter first-order minimizers by the second-order value.
Selection select_minimizer(const std::vector<MinimizerGeometry>& candidates,
                           const Potential& p, const Profile& prof);

}  // namespace chg
