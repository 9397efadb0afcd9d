// AVX2 variants. This translation unit is compiled with -mavx2 -mfma; the
// dispatcher only hands out this table after a cpuid check.

#include "chg/kernels.hpp"

#include <cmath>
#include <immintrin.h>

namespace chg::kernels {
namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

inline double hmax(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_max_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_max_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

const __m256d kAbsMask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));

double v_sum(const double* x, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i];
    return r;
}

double v_dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double r = hsum(acc);
    for (; i < n; ++i) r += x[i] * y[i];
    return r;
}

void v_axpy(double* y, double a, const double* x, std::size_t n) {
    const __m256d av = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d yv = _mm256_loadu_pd(y + i);
        yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
        _mm256_storeu_pd(y + i, yv);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

double v_l1_diff(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_add_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double r = hsum(acc);
    for (; i < n; ++i) r += std::fabs(x[i] - y[i]);
    return r;
}

double v_max_abs_diff(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        acc = _mm256_max_pd(acc, _mm256_and_pd(d, kAbsMask));
    }
    double r = hmax(acc);
    for (; i < n; ++i) r = std::fmax(r, std::fabs(x[i] - y[i]));
    return r;
}

void v_quartic_wprime(const double* u, double* out, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    const __m256d four = _mm256_set1_pd(4.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(u + i);
        __m256d t = _mm256_sub_pd(_mm256_mul_pd(v, v), one);
        _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_mul_pd(four, v), t));
    }
    for (; i < n; ++i) {
        const double v = u[i];
        out[i] = 4.0 * v * (v * v - 1.0);
    }
}

double v_quartic_w_sum(const double* u, std::size_t n) {
    const __m256d one = _mm256_set1_pd(1.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(u + i);
        __m256d t = _mm256_sub_pd(_mm256_mul_pd(v, v), one);
        acc = _mm256_fmadd_pd(t, t, acc);
    }
    double r = hsum(acc);
    for (; i < n; ++i) {
        const double t = u[i] * u[i] - 1.0;
        r += t * t;
    }
    return r;
}

const Table kAvx2 = {
    "avx2",   v_sum,          v_dot,          v_axpy,
    v_l1_diff, v_max_abs_diff, v_quartic_wprime, v_quartic_w_sum,
};

}  // namespace

const Table& avx2() { return kAvx2; }

}  // namespace chg::kernels
