#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gps/roots.hpp"

using namespace gps;

static ExpVec ev(std::vector<long> num, long den = 1) {
    std::vector<Int> n(num.begin(), num.end());
    return ExpVec(std::move(n), den);
}

static OrderPtr make_order(std::vector<std::vector<long>> rows) {
    std::vector<std::vector<Rat>> r;
    for (auto& row : rows) r.push_back(std::vector<Rat>(row.begin(), row.end()));
    return std::make_shared<WeightOrder>(std::move(r));
}

TEST_CASE("hensel on a linear polynomial returns the constant") {
    auto f5 = Field::make(5, 1);
    auto ord = make_order({{1}});
    FFElem c = ff_from_int(f5, 3);
    SeriesPoly F{gp_neg(gp_constant(f5, ord, c)), gp_constant(f5, ord, ff_one(f5))};  // y - 3
    auto r = hensel_root(F, c, Rat(10));
    CHECK(r.root.terms.size() == 1);
    CHECK(r.root.terms.at(ev({0})) == c);
    CHECK(r.residual_exact_zero);
}

TEST_CASE("hensel lift of y^2 - y - t over F_2 at cutoff 65") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    GPSeries t = gp_monomial(f2, ord, ev({1}), ff_one(f2));
    SeriesPoly F{gp_neg(t), gp_neg(gp_constant(f2, ord, ff_one(f2))),
                 gp_constant(f2, ord, ff_one(f2))};  // y^2 - y - t

    auto r = hensel_root(F, ff_zero(f2), Rat(65));
    // root = sum_{j>=0} t^{2^j} truncated below 65
    std::map<ExpVec, FFElem> expect;
    for (long e = 1; e < 65; e *= 2) expect.emplace(ev({e}), ff_one(f2));
    CHECK(r.root.terms == expect);
    CHECK(r.residual_valuation >= 65);

    // uniqueness: an independent iteration schedule agrees
    auto r2 = hensel_root(F, ff_zero(f2), Rat(65), HenselSchedule::frozen_derivative);
    CHECK(r2.root.terms == r.root.terms);

    // the other residue root gives the conjugate root 1 + sum t^{2^j}
    auto r3 = hensel_root(F, ff_one(f2), Rat(65));
    CHECK(r3.root.terms.count(ev({0})));
    CHECK(r3.root.terms.size() == expect.size() + 1);
}

TEST_CASE("hensel on y^2 - (1+t) over F_3") {
    auto f3 = Field::make(3, 1);
    auto ord = make_order({{1}});
    GPSeries c0 = gp_constant(f3, ord, ff_neg(ff_one(f3)));
    gp_add_term(c0, ev({1}), ff_neg(ff_one(f3)));  // -(1+t)
    SeriesPoly F{c0, gp_make(f3, ord), gp_constant(f3, ord, ff_one(f3))};
    auto r = hensel_root(F, ff_one(f3), Rat(5));
    CHECK(r.root.terms.at(ev({0})) == ff_one(f3));
    CHECK(r.residual_valuation >= 5);
    CHECK_THROWS_AS(hensel_root(F, ff_zero(f3), Rat(5)), NotSimpleRoot);
}

TEST_CASE("artin_schreier_root of t^{-1} telescopes exactly") {
    for (uint32_t p : {2u, 3u, 5u}) {
        auto fp = Field::make(p, 1);
        auto ord = make_order({{1}});
        GPSeries f = gp_monomial(fp, ord, ev({-1}), ff_one(fp));
        unsigned depth = 10;
        auto r = artin_schreier_root(f, Rat(0), depth);
        // h = sum_{j=1..depth} t^{-1/p^j}
        CHECK(r.root.terms.size() == depth);
        for (unsigned j = 1; j <= depth; ++j)
            CHECK(r.root.terms.at(ev({-1}, (long)pow_int(p, j))) == ff_one(r.extension_field));
        // h^p - h - f leaves exactly the frontier term -t^{-1/p^depth}
        GPSeries resid = gp_sub(gp_sub(gp_frobenius_pow(r.root), r.root), f);
        REQUIRE(resid.terms.size() == 1);
        auto [e, c] = *resid.terms.begin();
        CHECK(e == ev({-1}, (long)pow_int(p, depth)));
        CHECK(c == ff_neg(ff_one(fp)));
        CHECK(r.residual_valuation == Rat(-1, pow_int(p, depth)));
        // support model is the limit-0 family
        REQUIRE(r.root.model.has_value());
        CHECK(r.root.model->families.size() == 1);
        CHECK(r.root.model->families[0].limit == ev({0}));
    }
}

TEST_CASE("artin_schreier_root of 0 is 0") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    GPSeries z = gp_make(f2, ord);
    auto r = artin_schreier_root(z, Rat(4));
    CHECK(r.root.no_terms());
    CHECK(r.residual_exact_zero);
}

TEST_CASE("artin_schreier_root of t1^{-1} t2^{-1}") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1, 2}, {0, 1}});
    GPSeries f = gp_monomial(f2, ord, ev({-1, -1}), ff_one(f2));
    auto r = artin_schreier_root(f, Rat(0), 8);
    CHECK(r.root.terms.size() == 8);
    for (unsigned j = 1; j <= 8; ++j)
        CHECK(r.root.terms.count(ev({-1, -1}, (long)(1L << j))));
    GPSeries resid = gp_sub(gp_sub(gp_frobenius_pow(r.root), r.root), f);
    CHECK(resid.terms.size() == 1);  // only the frontier survives
}

TEST_CASE("artin_schreier_root with a nonnegative part needs an extension") {
    // X^2 - X - (a + t) over F_4 where a is a generator: residue roots live in F_16
    auto f4 = Field::make(2, 2);
    auto ord = make_order({{1}});
    GPSeries f = gp_constant(f4, ord, ff_gen(f4));
    gp_add_term(f, ev({1}), ff_one(f4));
    auto r = artin_schreier_root(f, Rat(6));
    // verify the defining equation on computed terms
    Embedding emb = embed_field(f4, r.extension_field);
    GPSeries fe = gp_map_field(f, emb);
    GPSeries resid = gp_sub(gp_sub(gp_frobenius_pow(r.root), r.root), fe);
    Cutoff lb = gp_val_lb(resid);
    CHECK((resid.no_terms() || lb.value >= 6));
}

TEST_CASE("newton_puiseux on y - t1 t2") {
    auto f3 = Field::make(3, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    LaurentPoly F = lp_make(f3, 2);
    lp_add_term(F, ev({0, 0}), 1, ff_one(f3));
    lp_add_term(F, ev({1, 1}), 0, ff_neg(ff_one(f3)));
    auto r = newton_puiseux(F, ord, Rat(10));
    CHECK(r.complete());
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].root.terms.size() == 1);
    CHECK(r.roots[0].root.terms.at(ev({1, 1})) == ff_one(f3));
    CHECK(r.common_den_prime_to_p == 1);
}

TEST_CASE("newton_puiseux on y^2 - t1 t2 over F_3") {
    auto f3 = Field::make(3, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    LaurentPoly F = lp_make(f3, 2);
    lp_add_term(F, ev({0, 0}), 2, ff_one(f3));
    lp_add_term(F, ev({1, 1}), 0, ff_neg(ff_one(f3)));
    auto r = newton_puiseux(F, ord, Rat(10));
    CHECK(r.complete());
    REQUIRE(r.roots.size() == 2);
    CHECK(r.common_den_prime_to_p == 2);  // the isogeny rescaling N
    for (const auto& root : r.roots) {
        CHECK(root.root.terms.size() == 1);
        CHECK(root.root.terms.count(ev({1, 1}, 2)));
        CHECK(root.residual_exact_zero);
        // square it back: (c t^{1/2,1/2})^2 = c^2 t1 t2 = t1 t2
        FFElem c = root.root.terms.begin()->second;
        CHECK(ff_mul(c, c) == ff_one(f3));
    }
    // the two roots are +-1 times the monomial
    CHECK_FALSE(r.roots[0].root.terms.begin()->second == r.roots[1].root.terms.begin()->second);
}

TEST_CASE("newton_puiseux delegates y^2 + y + t^{-1} to Artin-Schreier") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    LaurentPoly F = lp_make(f2, 1);
    lp_add_term(F, ev({0}), 2, ff_one(f2));
    lp_add_term(F, ev({0}), 1, ff_one(f2));
    lp_add_term(F, ev({-1}), 0, ff_one(f2));
    auto r = newton_puiseux(F, ord, Rat(0), 20, 16);
    CHECK(r.complete());
    REQUIRE(r.roots.size() == 2);
    // roots are h and h+1 with h = sum_{j>=1} t^{-1/2^j}
    bool with_const = false, without_const = false;
    for (const auto& root : r.roots) {
        CHECK(root.branch_log.back().method == "artin_schreier");
        for (unsigned j = 1; j <= 16; ++j)
            CHECK(root.root.terms.count(ev({-1}, (long)(1L << j))));
        if (root.root.terms.count(ev({0})))
            with_const = true;
        else
            without_const = true;
        // verify the equation on computed terms: residual only at the frontier
        GPSeries resid = lp_eval_y(F, root.root);
        for (const auto& [e, c] : resid.terms)
            CHECK(dot(ord->row(0), e) <= Rat(-1, (Int(1) << 16)));
    }
    CHECK(with_const);
    CHECK(without_const);
}

TEST_CASE("no root of y^2 + y + t^{-1} has bounded denominators (Chevalley)") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    LaurentPoly F = lp_make(f2, 1);
    lp_add_term(F, ev({0}), 2, ff_one(f2));
    lp_add_term(F, ev({0}), 1, ff_one(f2));
    lp_add_term(F, ev({-1}), 0, ff_one(f2));
    auto r = newton_puiseux(F, ord, Rat(0), 20, 64);
    for (const auto& root : r.roots) {
        // p-power denominators grow without bound through depth 64
        Int maxden = 1;
        for (const auto& [e, c] : root.root.terms) maxden = std::max(maxden, e.den());
        CHECK(maxden >= pow_int(Int(2), 64));
        // no common denominator M <= 64 expresses any truncation this deep
        for (long m = 1; m <= 64; ++m) {
            bool fits = true;
            for (const auto& [e, c] : root.root.terms)
                if ((e.num()[0] * m) % e.den() != 0) fits = false;
            CHECK_FALSE(fits);
        }
    }
}

TEST_CASE("newton_puiseux on a double root: y^2 - t over F_2") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    LaurentPoly F = lp_make(f2, 1);
    lp_add_term(F, ev({0}), 2, ff_one(f2));
    lp_add_term(F, ev({1}), 0, ff_one(f2));  // y^2 + t = y^2 - t
    auto r = newton_puiseux(F, ord, Rat(10));
    CHECK(r.complete());
    REQUIRE(r.roots.size() == 1);
    CHECK(r.roots[0].multiplicity == 2);
    CHECK(r.roots[0].root.terms.count(ev({1}, 2)));
    CHECK(r.roots[0].residual_exact_zero);
}

TEST_CASE("product of roots reconstructs the polynomial") {
    auto f7 = Field::make(7, 1);
    auto ord = make_order({{1}});
    // (y - t)(y - 2t^2) = y^2 - (t + 2t^2) y + 2 t^3
    LaurentPoly F = lp_make(f7, 1);
    lp_add_term(F, ev({0}), 2, ff_one(f7));
    lp_add_term(F, ev({1}), 1, ff_neg(ff_one(f7)));
    lp_add_term(F, ev({2}), 1, ff_neg(ff_from_int(f7, 2)));
    lp_add_term(F, ev({3}), 0, ff_from_int(f7, 2));
    auto r = newton_puiseux(F, ord, Rat(20));
    CHECK(r.complete());
    REQUIRE(r.roots.size() == 2);
    GPSeries e1 = gp_add(r.roots[0].root, r.roots[1].root);
    GPSeries e2 = gp_mul(r.roots[0].root, r.roots[1].root);
    // e1 = t + 2t^2, e2 = 2t^3
    CHECK(e1.terms.size() == 2);
    CHECK(e2.terms.size() == 1);
    CHECK(e2.terms.at(ev({3})) == ff_from_int(f7, 2));
    unsigned mults = 0;
    for (const auto& root : r.roots) mults += root.multiplicity;
    CHECK(mults == 2);
}

TEST_CASE("rejects non-monic input") {
    auto f3 = Field::make(3, 1);
    auto ord = make_order({{1}});
    LaurentPoly F = lp_make(f3, 1);
    lp_add_term(F, ev({1}), 2, ff_one(f3));  // t y^2: top coefficient not 1
    lp_add_term(F, ev({0}), 0, ff_one(f3));
    CHECK_THROWS_AS(newton_puiseux(F, ord, Rat(5)), NotMonicInY);
}
