#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "chg/kernels.hpp"

using namespace chg;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(gen);
    return v;
}

}  // namespace

TEST_CASE("scalar kernels match naive loops") {
    const auto x = random_vec(1003, 1);
    const auto y = random_vec(1003, 2);
    const auto& K = kernels::scalar();

    double s = 0.0, dot = 0.0, l1 = 0.0, mx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s += x[i];
        dot += x[i] * y[i];
        l1 += std::fabs(x[i] - y[i]);
        mx = std::fmax(mx, std::fabs(x[i] - y[i]));
    }
    CHECK(K.sum(x.data(), x.size()) == doctest::Approx(s).epsilon(1e-13));
    CHECK(K.dot(x.data(), y.data(), x.size()) ==
          doctest::Approx(dot).epsilon(1e-13));
    CHECK(K.l1_diff(x.data(), y.data(), x.size()) ==
          doctest::Approx(l1).epsilon(1e-13));
    CHECK(K.max_abs_diff(x.data(), y.data(), x.size()) ==
          doctest::Approx(mx).epsilon(1e-13));

    std::vector<double> z = y;
    K.axpy(z.data(), 0.37, x.data(), x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        CHECK(z[i] == doctest::Approx(y[i] + 0.37 * x[i]).epsilon(1e-14));
}

TEST_CASE("quartic kernels") {
    const auto u = random_vec(517, 3);
    const auto& K = kernels::scalar();
    std::vector<double> wp(u.size());
    K.quartic_wprime(u.data(), wp.data(), u.size());
    double wsum = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        CHECK(wp[i] ==
              doctest::Approx(4 * u[i] * u[i] * u[i] - 4 * u[i]).epsilon(1e-14));
        const double d = u[i] * u[i] - 1.0;
        wsum += d * d;
    }
    CHECK(K.quartic_w_sum(u.data(), u.size()) ==
          doctest::Approx(wsum).epsilon(1e-13));
}

TEST_CASE("avx2 table agrees with scalar when available") {
    if (!kernels::avx2_available()) {
        MESSAGE("AVX2 not available on this host; equivalence skipped");
        return;
    }
    const auto& S = kernels::scalar();
    const auto& V = kernels::avx2();
    for (std::size_t n : {std::size_t(1), std::size_t(7), std::size_t(8),
                          std::size_t(1000), std::size_t(1023)}) {
        const auto x = random_vec(n, unsigned(10 + n));
        const auto y = random_vec(n, unsigned(20 + n));
        CHECK(V.sum(x.data(), n) == doctest::Approx(S.sum(x.data(), n)).epsilon(1e-12));
        CHECK(V.dot(x.data(), y.data(), n) ==
              doctest::Approx(S.dot(x.data(), y.data(), n)).epsilon(1e-12));
        CHECK(V.l1_diff(x.data(), y.data(), n) ==
              doctest::Approx(S.l1_diff(x.data(), y.data(), n)).epsilon(1e-12));
        CHECK(V.max_abs_diff(x.data(), y.data(), n) ==
              doctest::Approx(S.max_abs_diff(x.data(), y.data(), n)).epsilon(1e-13));
        CHECK(V.quartic_w_sum(x.data(), n) ==
              doctest::Approx(S.quartic_w_sum(x.data(), n)).epsilon(1e-12));
        std::vector<double> a(n), b(n);
        S.quartic_wprime(x.data(), a.data(), n);
        V.quartic_wprime(x.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-14));
        std::vector<double> ya = y, yb = y;
        S.axpy(ya.data(), -1.4, x.data(), n);
        V.axpy(yb.data(), -1.4, x.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));
    }
}

TEST_CASE("active table is one of the two implementations") {
    const auto& A = kernels::active();
    if (kernels::avx2_available())
        CHECK(std::string(A.name) == std::string(kernels::avx2().name));
    else
        CHECK(std::string(A.name) == std::string(kernels::scalar().name));
}
