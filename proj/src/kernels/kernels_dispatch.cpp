#include "chg/kernels.hpp"

namespace chg::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

const Table& active() {
    static const Table& t = avx2_available() ? avx2() : scalar();
    return t;
}

}  // namespace chg::kernels
