#pragma once
// Array kernels used by the grid and field inner loops.
//
// Each kernel has a scalar reference implementation and, on x86-64 with AVX2,
// a vectorized variant. The active table is selected once at startup from
// cpuid; kernels::scalar() stays available so tests can check equivalence.

#include <cstddef>

namespace chg::kernels {

struct Table {
    const char* name;
    double (*sum)(const double* x, std::size_t n);
    double (*dot)(const double* x, const double* y, std::size_t n);
    void (*axpy)(double* y, double a, const double* x, std::size_t n);
    double (*l1_diff)(const double* x, const double* y, std::size_t n);
    double (*max_abs_diff)(const double* x, const double* y, std::size_t n);
    // out[i] = 4 u^3 - 4 u  (derivative of the quartic well (u^2-1)^2)
    void (*quartic_wprime)(const double* u, double* out, std::size_t n);
    // sum of (u^2-1)^2
    double (*quartic_w_sum)(const double* u, std::size_t n);
};

const Table& scalar();
const Table& avx2();        // valid only if avx2_available()
bool avx2_available();

// Runtime-selected table (AVX2 when the CPU supports it).
const Table& active();

}  // namespace chg::kernels
