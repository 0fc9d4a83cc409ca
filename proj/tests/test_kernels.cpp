#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "gps/kernels/modp.hpp"

using namespace gps::kernels;

namespace {

std::vector<uint32_t> random_vec(size_t n, uint32_t p, std::mt19937_64& rng) {
    std::vector<uint32_t> v(n);
    for (auto& x : v) x = (uint32_t)(rng() % p);
    return v;
}

}  // namespace

TEST_CASE("dispatched kernels agree with scalar reference") {
    std::mt19937_64 rng(7);
    const ModpOps& fast = ops();
    INFO("selected: ", fast.name);
    for (uint32_t p : {2u, 3u, 5u, 7u, 251u, 32003u, kMaxKernelPrime}) {
        for (size_t n : {size_t(0), size_t(1), size_t(7), size_t(8), size_t(33), size_t(100)}) {
            auto a = random_vec(n, p, rng);
            auto b = random_vec(n, p, rng);
            uint32_t c = (uint32_t)(rng() % p);

            std::vector<uint32_t> r1(n), r2(n);
            scalar_ops.add(r1.data(), a.data(), b.data(), n, p);
            fast.add(r2.data(), a.data(), b.data(), n, p);
            CHECK(r1 == r2);

            scalar_ops.sub(r1.data(), a.data(), b.data(), n, p);
            fast.sub(r2.data(), a.data(), b.data(), n, p);
            CHECK(r1 == r2);

            r1 = b;
            r2 = b;
            scalar_ops.axpy(r1.data(), a.data(), c, n, p);
            fast.axpy(r2.data(), a.data(), c, n, p);
            CHECK(r1 == r2);

            scalar_ops.scale(r1.data(), a.data(), c, n, p);
            fast.scale(r2.data(), a.data(), c, n, p);
            CHECK(r1 == r2);
        }
    }
}

TEST_CASE("scalar kernels match naive arithmetic") {
    std::mt19937_64 rng(11);
    const uint32_t p = 13;
    auto a = random_vec(50, p, rng);
    auto b = random_vec(50, p, rng);
    std::vector<uint32_t> r(50);
    scalar_ops.add(r.data(), a.data(), b.data(), 50, p);
    for (size_t i = 0; i < 50; ++i) CHECK(r[i] == (a[i] + b[i]) % p);
    scalar_ops.axpy(r.data(), b.data(), 9, 50, p);
    for (size_t i = 0; i < 50; ++i)
        CHECK(r[i] == ((a[i] + b[i]) % p + 9 * b[i]) % p);
}
