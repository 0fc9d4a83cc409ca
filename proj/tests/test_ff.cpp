#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gps/ff.hpp"

using namespace gps;

TEST_CASE("make_field basics") {
    auto f2 = Field::make(2, 1);
    CHECK(f2->p == 2);
    CHECK(f2->cardinality() == 2);

    auto f4 = Field::make(2, 2, std::vector<uint32_t>{1, 1, 1});
    CHECK(f4->cardinality() == 4);

    // x^2+1 = (x+1)^2 in characteristic 2
    CHECK_THROWS_AS(Field::make(2, 2, std::vector<uint32_t>{1, 0, 1}), ReducibleModulus);
    CHECK_THROWS_AS(Field::make(4, 1), NotPrime);

    // x^2+x+1 has no root in F_2 (exhaustion)
    for (uint32_t c = 0; c < 2; ++c) CHECK((c * c + c + 1) % 2 != 0);

    // the deterministic search finds x^2+x+1 for F_4
    auto f4auto = Field::make(2, 2);
    CHECK(f4auto->modulus == std::vector<uint32_t>{1, 1, 1});
}

TEST_CASE("field arithmetic in F_4") {
    auto f4 = Field::make(2, 2, std::vector<uint32_t>{1, 1, 1});
    FFElem a = ff_gen(f4);  // a^2 = a + 1
    FFElem a2 = ff_mul(a, a);
    CHECK(a2 == ff_add(a, ff_one(f4)));
    CHECK(ff_mul(a, ff_inv(a)) == ff_one(f4));

    // pth_root(a) = a+1 since (a+1)^2 = a^2+1 = a
    FFElem r = ff_pth_root(a);
    CHECK(r == ff_add(a, ff_one(f4)));
    CHECK(ff_mul(r, r) == a);
}

TEST_CASE("pth_root properties") {
    std::mt19937_64 rng(3);
    for (auto [p, k] : {std::pair<uint32_t, unsigned>{2, 3}, {3, 2}, {5, 1}, {3, 4}}) {
        auto f = Field::make(p, k);
        CHECK(ff_pth_root(ff_zero(f)).is_zero());
        // Fermat: prime-field constants are fixed
        for (uint32_t c = 0; c < p; ++c)
            CHECK(ff_pth_root(ff_from_int(f, c)) == ff_from_int(f, c));
        for (int t = 0; t < 20; ++t) {
            std::vector<uint32_t> coords(k);
            for (auto& x : coords) x = (uint32_t)(rng() % p);
            FFElem a{f, coords};
            CHECK(ff_pow(ff_pth_root(a), p) == a);
            CHECK(ff_pth_root(ff_pow(a, p)) == a);
        }
    }
}

static FqPoly poly_from_ints(const FieldPtr& f, const std::vector<long>& cs) {
    FqPoly r(f);
    for (size_t i = 0; i < cs.size(); ++i) r.set_coeff(i, ff_from_int(f, Int(cs[i])));
    return r;
}

TEST_CASE("factor x^2+x over F_2") {
    auto f2 = Field::make(2, 1);
    auto fr = factor_univariate(poly_from_ints(f2, {0, 1, 1}), true);
    REQUIRE(fr.factors.size() == 2);
    CHECK(fr.factors[0].factor.deg() == 1);
    CHECK(fr.factors[1].factor.deg() == 1);
    REQUIRE(fr.roots.size() == 2);
    std::vector<uint32_t> roots{fr.roots[0].value.coords[0], fr.roots[1].value.coords[0]};
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<uint32_t>{0, 1});
}

TEST_CASE("x^2+x+1 irreducible over F_2, splits over F_4") {
    auto f2 = Field::make(2, 1);
    auto f = poly_from_ints(f2, {1, 1, 1});
    CHECK(poly_is_irreducible(f));
    auto fr = factor_univariate(f, true);
    REQUIRE(fr.factors.size() == 1);
    CHECK(fr.factors[0].factor.deg() == 2);
    REQUIRE(fr.roots.size() == 2);
    CHECK(fr.roots[0].ext_degree == 2);
    // verify both roots by exhaustive check in F_4
    for (const auto& r : fr.roots) {
        FFElem v = ff_add(ff_add(ff_mul(r.value, r.value), r.value), ff_one(r.field));
        CHECK(v.is_zero());
    }
}

TEST_CASE("x^3-1 over F_7 = (x-1)(x-2)(x-4)") {
    auto f7 = Field::make(7, 1);
    auto fr = factor_univariate(poly_from_ints(f7, {-1, 0, 0, 1}), true);
    REQUIRE(fr.factors.size() == 3);
    std::vector<uint32_t> roots;
    for (const auto& r : fr.roots) roots.push_back(r.value.coords[0]);
    std::sort(roots.begin(), roots.end());
    CHECK(roots == std::vector<uint32_t>{1, 2, 4});
    // exhaustive root search oracle in F_7
    std::vector<uint32_t> oracle;
    for (uint32_t c = 0; c < 7; ++c)
        if ((c * c * c) % 7 == 1) oracle.push_back(c);
    CHECK(roots == oracle);
}

TEST_CASE("factorization re-multiplies to input (randomized)") {
    std::mt19937_64 rng(17);
    std::vector<FieldPtr> fields = {Field::make(2, 1), Field::make(3, 1), Field::make(2, 2),
                                    Field::make(3, 2), Field::make(5, 1), Field::make(3, 4)};
    for (const auto& fld : fields) {
        for (int trial = 0; trial < 8; ++trial) {
            unsigned deg = 1 + (unsigned)(rng() % 12);
            FqPoly f(fld);
            for (unsigned i = 0; i <= deg; ++i) {
                std::vector<uint32_t> c(fld->k);
                for (auto& x : c) x = (uint32_t)(rng() % fld->p);
                f.set_coeff(i, FFElem{fld, c});
            }
            f.set_coeff(deg, ff_one(fld));
            auto fr = factor_univariate(f, false, 5);
            FqPoly prod = FqPoly::constant(fr.lead);
            unsigned total = 0;
            for (const auto& fu : fr.factors) {
                CHECK(poly_is_irreducible(fu.factor));
                for (unsigned m = 0; m < fu.mult; ++m) prod = prod * fu.factor;
                total += fu.mult * (unsigned)fu.factor.deg();
            }
            CHECK(prod == f);
            CHECK(total == deg);
        }
    }
}

TEST_CASE("root count with multiplicity equals degree over splitting extensions") {
    std::mt19937_64 rng(23);
    auto f3 = Field::make(3, 1);
    for (int trial = 0; trial < 6; ++trial) {
        unsigned deg = 2 + (unsigned)(rng() % 5);
        FqPoly f(f3);
        for (unsigned i = 0; i < deg; ++i)
            f.set_coeff(i, ff_from_int(f3, Int((long)(rng() % 3))));
        f.set_coeff(deg, ff_one(f3));
        auto fr = factor_univariate(f, true);
        unsigned count = 0;
        for (const auto& r : fr.roots) count += r.mult;
        CHECK(count == deg);
    }
}

TEST_CASE("embedding is a ring homomorphism") {
    auto f4 = Field::make(2, 2);
    auto f16 = Field::make(2, 4);
    auto emb = embed_field(f4, f16);
    std::mt19937_64 rng(29);
    for (int t = 0; t < 20; ++t) {
        FFElem a{f4, {(uint32_t)(rng() % 2), (uint32_t)(rng() % 2)}};
        FFElem b{f4, {(uint32_t)(rng() % 2), (uint32_t)(rng() % 2)}};
        CHECK(emb.apply(ff_add(a, b)) == ff_add(emb.apply(a), emb.apply(b)));
        CHECK(emb.apply(ff_mul(a, b)) == ff_mul(emb.apply(a), emb.apply(b)));
    }
    CHECK(emb.apply(ff_one(f4)) == ff_one(f16));
}
