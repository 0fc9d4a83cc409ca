#pragma once

#include <cstddef>
#include <cstdint>

// Vector kernels for coefficient arithmetic mod a small prime p < 2^15.
// A scalar reference implementation always exists; an AVX2 variant is
// selected at runtime when the CPU supports it.  Both must agree
// bit-for-bit (equivalence-tested in tests/test_kernels.cpp).

namespace gps::kernels {

struct ModpOps {
    // r[i] = (a[i] + b[i]) % p
    void (*add)(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
    // r[i] = (a[i] + p - b[i]) % p
    void (*sub)(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
    // r[i] = (r[i] + c * a[i]) % p
    void (*axpy)(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
    // r[i] = (c * a[i]) % p
    void (*scale)(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
    const char* name;
};

namespace scalar {
void add(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
void sub(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
void axpy(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
void scale(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
}  // namespace scalar

#if defined(GPS_HAVE_AVX2_BUILD)
namespace avx2 {
void add(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
void sub(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p);
void axpy(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
void scale(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p);
}  // namespace avx2
#endif

extern const ModpOps scalar_ops;

/// Best implementation for this CPU, resolved once at first use.
const ModpOps& ops();

/// Largest prime the packed kernels accept (products must fit in 32 bits).
constexpr uint32_t kMaxKernelPrime = (1u << 15) - 1;

}  // namespace gps::kernels
