#include "chg/kernels.hpp"

#include <cmath>

namespace chg::kernels {
namespace {

double s_sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

double s_dot(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
    return acc;
}

void s_axpy(double* y, double a, const double* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double s_l1_diff(const double* x, const double* y, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += std::fabs(x[i] - y[i]);
    return acc;
}

double s_max_abs_diff(const double* x, const double* y, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::fmax(m, std::fabs(x[i] - y[i]));
    return m;
}

void s_quartic_wprime(const double* u, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = u[i];
        out[i] = 4.0 * v * (v * v - 1.0);
    }
}

double s_quartic_w_sum(const double* u, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = u[i] * u[i] - 1.0;
        acc += t * t;
    }
    return acc;
}

const Table kScalar = {
    "scalar", s_sum,          s_dot,          s_axpy,
    s_l1_diff, s_max_abs_diff, s_quartic_wprime, s_quartic_w_sum,
};

}  // namespace

const Table& scalar() { return kScalar; }

}  // namespace chg::kernels
