#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gps/bertini.hpp"

using namespace gps;

static ExpVec ev(std::vector<long> num, long den = 1) {
    std::vector<Int> n(num.begin(), num.end());
    return ExpVec(std::move(n), den);
}

static LaurentPoly biv(const FieldPtr& f, std::vector<std::tuple<long, unsigned, long>> terms) {
    LaurentPoly r = lp_make(f, 1);
    for (auto& [xe, yd, c] : terms) lp_add_term(r, ev({xe}), yd, ff_from_int(f, c));
    return r;
}

TEST_CASE("y^2 - x^2 over F_3 splits") {
    auto f3 = Field::make(3, 1);
    auto g = biv(f3, {{0, 2, 1}, {2, 0, -1}});
    auto r = factor_bivariate(g);
    REQUIRE(r.factors.size() == 2);
    CHECK(r.factors[0].factor.ydeg() == 1);
    CHECK(r.factors[1].factor.ydeg() == 1);
    LaurentPoly prod = lp_mul(r.factors[0].factor, r.factors[1].factor);
    CHECK(lp_equal(prod, g));
}

TEST_CASE("y^2 - x^3 over F_5 is absolutely irreducible") {
    auto f5 = Field::make(5, 1);
    auto g = biv(f5, {{0, 2, 1}, {3, 0, -1}});
    auto r = factor_bivariate(g, true);
    CHECK(r.factors.size() == 1);
    CHECK(r.factors[0].mult == 1);
    CHECK(r.absolutely_irreducible());
}

TEST_CASE("y^2 + y + 1 over F_2: irreducible, splits over F_4") {
    auto f2 = Field::make(2, 1);
    auto g = biv(f2, {{0, 2, 1}, {0, 1, 1}, {0, 0, 1}});
    auto r = factor_bivariate(g, true);
    REQUIRE(r.factors.size() == 1);
    CHECK(r.factors[0].mult == 1);
    CHECK_FALSE(r.absolutely_irreducible());
    CHECK(r.absolute_count() == 2);
    CHECK(r.absolute_degrees == std::vector<unsigned>{1, 1});
    CHECK(r.extension_degree == 2);
}

TEST_CASE("Laurent factors with negative exponents") {
    auto f3 = Field::make(3, 1);
    auto g = biv(f3, {{0, 2, 1}, {-2, 0, -1}});  // y^2 - x^{-2}
    auto r = factor_bivariate(g);
    REQUIRE(r.factors.size() == 2);
    CHECK(lp_equal(lp_mul(r.factors[0].factor, r.factors[1].factor), g));
}

TEST_CASE("repeated factors in characteristic 2") {
    auto f2 = Field::make(2, 1);
    auto g = biv(f2, {{0, 2, 1}, {2, 0, 1}});  // (y + x)^2
    auto r = factor_bivariate(g);
    REQUIRE(r.factors.size() == 1);
    CHECK(r.factors[0].mult == 2);
    CHECK(r.factors[0].factor.ydeg() == 1);
}

TEST_CASE("y^p - x stays irreducible (inseparable case)") {
    auto f2 = Field::make(2, 1);
    auto g = biv(f2, {{0, 2, 1}, {1, 0, 1}});  // y^2 + x
    auto r = factor_bivariate(g, true);
    CHECK(r.factors.size() == 1);
    CHECK(r.factors[0].mult == 1);
    CHECK(r.absolutely_irreducible());
}

TEST_CASE("re-multiplication on random products (oracle: built reducible)") {
    std::mt19937_64 rng(67);
    for (auto [p, k] : {std::pair<uint32_t, unsigned>{3, 1}, {2, 1}, {5, 1}, {2, 2}}) {
        auto fld = Field::make(p, k);
        for (int trial = 0; trial < 6; ++trial) {
            // product of two random monic-in-y linear/quadratic pieces
            auto rand_piece = [&](unsigned deg) {
                LaurentPoly f = lp_make(fld, 1);
                lp_add_term(f, ev({0}), deg, ff_one(fld));
                for (unsigned yd = 0; yd < deg; ++yd)
                    for (long xe = -1; xe <= 2; ++xe)
                        if (rng() % 3 == 0) {
                            std::vector<uint32_t> c(fld->k);
                            for (auto& x : c) x = (uint32_t)(rng() % p);
                            lp_add_term(f, ev({xe}), yd, FFElem{fld, c});
                        }
                return f;
            };
            LaurentPoly a = rand_piece(1 + rng() % 2), b = rand_piece(1 + rng() % 2);
            LaurentPoly g = lp_mul(a, b);
            auto r = factor_bivariate(g, false, 11);
            CHECK(r.factor_count_with_mult() >= 2);
            LaurentPoly prod = lp_make(fld, 1);
            lp_add_term(prod, ev({0}), 0, ff_one(fld));
            for (const auto& fac : r.factors)
                for (unsigned m = 0; m < fac.mult; ++m) prod = lp_mul(prod, fac.factor);
            CHECK(lp_equal(prod, g));
            // factor degree multiset is seed-invariant
            auto r2 = factor_bivariate(g, false, 4242);
            std::vector<long> d1, d2;
            for (const auto& fac : r.factors)
                for (unsigned m = 0; m < fac.mult; ++m) d1.push_back(fac.factor.ydeg());
            for (const auto& fac : r2.factors)
                for (unsigned m = 0; m < fac.mult; ++m) d2.push_back(fac.factor.ydeg());
            std::sort(d1.begin(), d1.end());
            std::sort(d2.begin(), d2.end());
            CHECK(d1 == d2);
        }
    }
}

TEST_CASE("pb_falsify on y^2 - t1 over F_3") {
    auto f3 = Field::make(3, 1);
    LaurentPoly f = lp_make(f3, 1);
    lp_add_term(f, ev({0}), 2, ff_one(f3));
    lp_add_term(f, ev({1}), 0, ff_neg(ff_one(f3)));
    auto w = pb_falsify(f, 2);
    REQUIRE(w.has_value());
    CHECK(w->isogeny == IntMat{{2}});
    REQUIRE(w->factors.size() == 2);
    LaurentPoly prod = lp_mul(w->factors[0], w->factors[1]);
    LaurentPoly pb = pullback_isogeny(f, w->isogeny);
    CHECK(lp_equal(prod, pb));
}

TEST_CASE("pb_falsify: degree-1 input is never falsified") {
    auto f3 = Field::make(3, 1);
    LaurentPoly f = lp_make(f3, 2);
    lp_add_term(f, ev({0, 0}), 1, ff_one(f3));
    lp_add_term(f, ev({1, 1}), 0, ff_neg(ff_one(f3)));  // y - t1 t2
    CHECK_FALSE(pb_falsify(f, 3).has_value());
}

TEST_CASE("pb_falsify reproduces the x^2 - y z^2 witness") {
    auto f3 = Field::make(3, 1);
    // torus vars (x, y), fiber var z; monic normalization happens internally
    LaurentPoly f = lp_make(f3, 2);
    lp_add_term(f, ev({2, 0}), 0, ff_one(f3));
    lp_add_term(f, ev({0, 1}), 2, ff_neg(ff_one(f3)));
    auto w = pb_falsify(f, 2);
    REQUIRE(w.has_value());
    CHECK(w->isogeny == IntMat{{1, 0}, {0, 2}});
    REQUIRE(w->factors.size() == 2);
    // factors are x - yz and x + yz up to units: check unit-quotients
    LaurentPoly a = lp_make(f3, 2), b = lp_make(f3, 2);
    lp_add_term(a, ev({1, 0}), 0, ff_one(f3));
    lp_add_term(a, ev({0, 1}), 1, ff_neg(ff_one(f3)));  // x - yz
    lp_add_term(b, ev({1, 0}), 0, ff_one(f3));
    lp_add_term(b, ev({0, 1}), 1, ff_one(f3));  // x + yz
    auto is_unit_multiple = [&](const LaurentPoly& u, const LaurentPoly& v) {
        if (u.terms.size() != v.terms.size()) return false;
        // candidate unit from leading terms
        auto [ku, cu] = *u.terms.begin();
        auto [kv, cv] = *v.terms.begin();
        if (ku.second != kv.second) return false;
        LaurentPoly shifted = lp_shift(v, ku.first - kv.first);
        shifted = lp_scale(shifted, ff_mul(cu, ff_inv(cv)));
        return lp_equal(shifted, u);
    };
    bool matched = (is_unit_multiple(w->factors[0], a) && is_unit_multiple(w->factors[1], b)) ||
                   (is_unit_multiple(w->factors[0], b) && is_unit_multiple(w->factors[1], a));
    CHECK(matched);
}

TEST_CASE("bertini_scan on y^2 - t1 over F_3: bad set is the even lattice") {
    auto f3 = Field::make(3, 1);
    LaurentPoly f = lp_make(f3, 1);
    lp_add_term(f, ev({0}), 2, ff_one(f3));
    lp_add_term(f, ev({1}), 0, ff_neg(ff_one(f3)));
    auto rep = bertini_scan(f, Cone::orthant(1), 6, ThetaPolicy::ones);
    REQUIRE(rep.per_direction.size() == 6);
    std::vector<std::vector<Int>> expect_bad = {{2}, {4}, {6}};
    CHECK(rep.bad == expect_bad);
    REQUIRE(rep.fitted.size() == 1);
    CHECK(rep.fitted[0].index() == 2);
    CHECK(rep.fitted[0].contains({2}));
    CHECK(rep.uncovered.empty());
    // good directions carry certified factorizations: y^2 - x^odd irreducible
    for (const auto& dr : rep.per_direction)
        if (dr.n[0] % 2 != 0) CHECK(dr.irreducible);
}

TEST_CASE("bertini_scan on y - t1 t2: no bad directions") {
    auto f2 = Field::make(2, 1);
    LaurentPoly f = lp_make(f2, 2);
    lp_add_term(f, ev({0, 0}), 1, ff_one(f2));
    lp_add_term(f, ev({1, 1}), 0, ff_one(f2));
    auto rep = bertini_scan(f, Cone::orthant(2), 3, ThetaPolicy::ones);
    CHECK(rep.bad.empty());
    CHECK(rep.fitted.empty());
    CHECK(rep.per_direction.size() == 9);
}

TEST_CASE("bertini_scan with exhaustive thetas over F_4 (small box)") {
    auto f2 = Field::make(2, 1);
    LaurentPoly f = lp_make(f2, 2);
    lp_add_term(f, ev({0, 0}), 2, ff_one(f2));
    lp_add_term(f, ev({0, 0}), 1, ff_one(f2));
    lp_add_term(f, ev({-1, -1}), 0, ff_one(f2));  // y^2 + y + (t1 t2)^{-1}
    auto rep = bertini_scan(f, Cone::orthant(2), 2, ThetaPolicy::exhaustive_small_field, 2);
    CHECK(rep.per_direction.size() == 4);
    CHECK(rep.bad.empty());
}

TEST_CASE("fit_bad_lattices") {
    std::vector<std::vector<Int>> unc;
    auto l1 = fit_bad_lattices({{2}, {4}, {6}}, 1, 8, &unc);
    REQUIRE(l1.size() == 1);
    CHECK(l1[0].index() == 2);
    CHECK(unc.empty());

    auto l2 = fit_bad_lattices({}, 2, 8, &unc);
    CHECK(l2.empty());
    CHECK(unc.empty());

    // re-checkable: chosen lattices jointly cover, all indices >= 2
    std::vector<std::vector<Int>> bad = {{2, 0}, {0, 2}, {2, 2}};
    auto l3 = fit_bad_lattices(bad, 2, 8, &unc);
    CHECK(!l3.empty());
    for (const auto& l : l3) CHECK(l.index() >= 2);
    for (const auto& n : bad) {
        bool covered = false;
        for (const auto& l : l3)
            if (l.contains(n)) covered = true;
        CHECK(covered);
    }
    CHECK(unc.empty());

    // a singleton stays honestly uncovered
    auto l4 = fit_bad_lattices({{3, 1}}, 2, 4, &unc);
    CHECK(l4.empty());
    REQUIRE(unc.size() == 1);
    CHECK(unc[0] == std::vector<Int>{3, 1});
}
