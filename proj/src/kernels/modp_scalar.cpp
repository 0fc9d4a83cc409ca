#include "gps/kernels/modp.hpp"

namespace gps::kernels::scalar {

void add(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i) {
        uint32_t s = a[i] + b[i];
        r[i] = s >= p ? s - p : s;
    }
}

void sub(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i) {
        uint32_t s = a[i] + p - b[i];
        r[i] = s >= p ? s - p : s;
    }
}

void axpy(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i) {
        r[i] = (r[i] + c * a[i]) % p;
    }
}

void scale(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p) {
    for (size_t i = 0; i < n; ++i) {
        r[i] = (c * a[i]) % p;
    }
}

}  // namespace gps::kernels::scalar

namespace gps::kernels {
const ModpOps scalar_ops{scalar::add, scalar::sub, scalar::axpy, scalar::scale, "scalar"};
}
