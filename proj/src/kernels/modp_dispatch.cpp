#include "gps/kernels/modp.hpp"

namespace gps::kernels {

#if defined(GPS_HAVE_AVX2_BUILD)
static const ModpOps avx2_ops{avx2::add, avx2::sub, avx2::axpy, avx2::scale, "avx2"};
#endif

const ModpOps& ops() {
    static const ModpOps* selected = [] {
#if defined(GPS_HAVE_AVX2_BUILD)
        if (__builtin_cpu_supports("avx2")) return &avx2_ops;
#endif
        return &scalar_ops;
    }();
    return *selected;
}

}  // namespace gps::kernels
