#include "gps/kernels/modp.hpp"

#include <immintrin.h>

// Inputs are reduced mod p with p < 2^15, so c*a[i] + r[i] < 2^31 and the
// Barrett quotient fits a 32-bit lane.  mu = floor(2^32 / p); then
// q = (x * mu) >> 32 satisfies x - q*p in [0, 2p), one conditional subtract.

namespace gps::kernels::avx2 {

namespace {

inline __m256i mul_epu32_full(__m256i x, __m256i y) {
    // 8x32 multiply keeping low 32 bits of each product
    return _mm256_mullo_epi32(x, y);
}

inline __m256i mulhi_epu32(__m256i x, __m256i mu) {
    // high 32 bits of 32x32->64 products, for all 8 lanes
    __m256i even = _mm256_mul_epu32(x, mu);                      // lanes 0,2,4,6
    __m256i odd = _mm256_mul_epu32(_mm256_srli_epi64(x, 32),
                                   _mm256_srli_epi64(mu, 32));   // lanes 1,3,5,7
    even = _mm256_srli_epi64(even, 32);
    odd = _mm256_and_si256(odd, _mm256_set1_epi64x(0xFFFFFFFF00000000LL));
    // odd currently holds hi bits already in high half of each 64-bit lane
    return _mm256_or_si256(even, odd);
}

inline __m256i barrett_reduce(__m256i x, __m256i vp, __m256i vmu) {
    __m256i q = mulhi_epu32(x, vmu);
    __m256i qp = mul_epu32_full(q, vp);
    __m256i rem = _mm256_sub_epi32(x, qp);
    // rem in [0, 2p): subtract p where rem >= p
    __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi32(rem, _mm256_sub_epi32(vp, _mm256_set1_epi32(1))),
                                 _mm256_cmpeq_epi32(rem, vp));
    rem = _mm256_sub_epi32(rem, _mm256_and_si256(ge, vp));
    return rem;
}

}  // namespace

void add(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p) {
    const __m256i vp = _mm256_set1_epi32((int)p);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i vb = _mm256_loadu_si256((const __m256i*)(b + i));
        __m256i s = _mm256_add_epi32(va, vb);
        __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi32(s, _mm256_sub_epi32(vp, _mm256_set1_epi32(1))),
                                     _mm256_cmpeq_epi32(s, vp));
        s = _mm256_sub_epi32(s, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256((__m256i*)(r + i), s);
    }
    for (; i < n; ++i) {
        uint32_t s = a[i] + b[i];
        r[i] = s >= p ? s - p : s;
    }
}

void sub(uint32_t* r, const uint32_t* a, const uint32_t* b, size_t n, uint32_t p) {
    const __m256i vp = _mm256_set1_epi32((int)p);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i vb = _mm256_loadu_si256((const __m256i*)(b + i));
        __m256i s = _mm256_add_epi32(va, _mm256_sub_epi32(vp, vb));
        __m256i ge = _mm256_or_si256(_mm256_cmpgt_epi32(s, _mm256_sub_epi32(vp, _mm256_set1_epi32(1))),
                                     _mm256_cmpeq_epi32(s, vp));
        s = _mm256_sub_epi32(s, _mm256_and_si256(ge, vp));
        _mm256_storeu_si256((__m256i*)(r + i), s);
    }
    for (; i < n; ++i) {
        uint32_t s = a[i] + p - b[i];
        r[i] = s >= p ? s - p : s;
    }
}

void axpy(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p) {
    const uint64_t mu64 = (uint64_t(1) << 32) / p;
    const __m256i vp = _mm256_set1_epi32((int)p);
    const __m256i vmu = _mm256_set1_epi32((int)(uint32_t)mu64);
    const __m256i vc = _mm256_set1_epi32((int)c);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i vr = _mm256_loadu_si256((const __m256i*)(r + i));
        __m256i x = _mm256_add_epi32(mul_epu32_full(vc, va), vr);
        _mm256_storeu_si256((__m256i*)(r + i), barrett_reduce(x, vp, vmu));
    }
    for (; i < n; ++i) r[i] = (r[i] + c * a[i]) % p;
}

void scale(uint32_t* r, const uint32_t* a, uint32_t c, size_t n, uint32_t p) {
    const uint64_t mu64 = (uint64_t(1) << 32) / p;
    const __m256i vp = _mm256_set1_epi32((int)p);
    const __m256i vmu = _mm256_set1_epi32((int)(uint32_t)mu64);
    const __m256i vc = _mm256_set1_epi32((int)c);
    size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i va = _mm256_loadu_si256((const __m256i*)(a + i));
        __m256i x = mul_epu32_full(vc, va);
        _mm256_storeu_si256((__m256i*)(r + i), barrett_reduce(x, vp, vmu));
    }
    for (; i < n; ++i) r[i] = (c * a[i]) % p;
}

}  // namespace gps::kernels::avx2
