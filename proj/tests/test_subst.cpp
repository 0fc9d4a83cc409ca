#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gps/roots.hpp"
#include "gps/subst.hpp"

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

static SubstSpec ones_spec(const FieldPtr& f, std::vector<long> n) {
    SubstSpec s;
    s.n.assign(n.begin(), n.end());
    s.theta.assign(n.size(), ff_one(f));
    return s;
}

// alpha = sum_{j>=0} t1^{1-1/2^j} t2^{1/2^j}, materialized to depth, with model
static GPSeries alpha_series(const FieldPtr& f2, const OrderPtr& ord, unsigned depth) {
    GPSeries a = gp_make(f2, ord);
    StructuredSupport s;
    s.p = 2;
    s.d = 2;
    s.families.push_back({ev({1, 0}), ev({0, 1}), 0});
    for (unsigned j = 0; j <= depth; ++j) gp_add_term(a, s.families[0].member(j, 2), ff_one(f2));
    a.model = s;
    a.cutoff = Cutoff::at(Rat(2) - Rat(1, (Int(1) << (depth + 1))) - Rat(1, 1000000));
    return a;
}

TEST_CASE("phi on a monomial") {
    auto f5 = Field::make(5, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    GPSeries f = gp_monomial(f5, ord, ev({1, 1}), ff_one(f5));
    auto r = phi_series(f, ones_spec(f5, {2, 3}));
    CHECK(r.image.terms.size() == 1);
    CHECK(r.image.terms.count(ev({5})));
    CHECK(r.exactness_certified);
}

TEST_CASE("phi on alpha: collapse at (1,1), fine at (3,1)") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    GPSeries alpha = alpha_series(f2, ord, 20);

    CHECK_THROWS_AS(phi_series(alpha, ones_spec(f2, {1, 1})), InfiniteFiber);

    auto r = phi_series(alpha, ones_spec(f2, {3, 1}));
    // exponents 3 - 2^{1-j} are pairwise distinct: 1, 2, 5/2, 11/4, ...
    CHECK(r.image.terms.size() == 21);
    CHECK(r.image.terms.count(ev({1})));
    CHECK(r.image.terms.count(ev({2})));
    CHECK(r.image.terms.count(ev({5}, 2)));
    CHECK(r.image.terms.count(ev({11}, 4)));
    CHECK(r.exactness_certified);
    REQUIRE(r.image.model.has_value());
    CHECK(r.image.model->families.size() == 1);
    CHECK(r.image.model->families[0].limit == ev({3}));
}

TEST_CASE("phi without a model uses the collision heuristic") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    GPSeries f = gp_make(f2, ord);
    // twenty distinct points all mapping to x^0 under n = (1,-1)
    for (long k = 0; k < 20; ++k) gp_add_term(f, ev({k, k}), ff_one(f2));
    SubstSpec spec = ones_spec(f2, {1, -1});
    CHECK_THROWS_AS(phi_series(f, spec), InfiniteFiber);
    // below the threshold it folds terms (here: all to the same exponent, char 2)
    GPSeries g = gp_make(f2, ord);
    for (long k = 0; k < 4; ++k) gp_add_term(g, ev({k, k}), ff_one(f2));
    auto r = phi_series(g, spec);
    CHECK(r.image.no_terms());  // 1+1+1+1 = 0 over F_2
    CHECK(r.exactness_certified);
}

TEST_CASE("theta powers use unique p-th roots") {
    auto f4 = Field::make(2, 2);
    auto ord = make_order({{1}});
    FFElem a = ff_gen(f4);
    GPSeries f = gp_monomial(f4, ord, ev({1}, 2), ff_one(f4));  // t^{1/2}
    SubstSpec spec;
    spec.n = {1};
    spec.theta = {a};
    auto r = phi_series(f, spec);
    // theta^{1/2} = pth_root(a) = a+1
    CHECK(r.image.terms.at(ev({1}, 2)) == ff_add(a, ff_one(f4)));
}

TEST_CASE("nonpolynomial_witness on alpha") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    GPSeries alpha = alpha_series(f2, ord, 12);

    SubstSpec spec = ones_spec(f2, {2, 1});
    auto w = nonpolynomial_witness(alpha, spec);
    REQUIRE(std::holds_alternative<NonIntegerExponent>(w));
    const auto& ni = std::get<NonIntegerExponent>(w);
    CHECK(ni.v == ev({1, 1}, 2));
    CHECK(ni.h.index() == 2);
    // soundness: n.v not integral and n not in H
    Rat nv = dot(spec.n, ni.v);
    CHECK(rat_den(nv) != 1);
    CHECK_FALSE(ni.h.contains(spec.n));
    // H = {m : m1 + m2 even}
    CHECK(ni.h.contains({1, 1}));
    CHECK(ni.h.contains({2, 0}));
    CHECK_FALSE(ni.h.contains({1, 0}));

    // deeper witnesses give arbitrarily large index
    auto w8 = nonpolynomial_witness(alpha, spec, 8);
    REQUIRE(std::holds_alternative<NonIntegerExponent>(w8));
    CHECK(std::get<NonIntegerExponent>(w8).h.index() >= 8);

    // re-running with n' in H (and in sigma) removes that particular witness
    SubstSpec spec2 = ones_spec(f2, {3, 1});
    CHECK(ni.h.contains(spec2.n));
    auto w2 = nonpolynomial_witness(alpha, spec2);
    if (std::holds_alternative<NonIntegerExponent>(w2))
        CHECK_FALSE(std::get<NonIntegerExponent>(w2).v == ni.v);
}

TEST_CASE("nonpolynomial_witness on the Abhyankar root") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{1}});
    GPSeries h = gp_make(f2, ord);
    StructuredSupport s;
    s.p = 2;
    s.d = 1;
    s.families.push_back({ev({0}), ev({-1}), 1});
    for (unsigned j = 1; j <= 10; ++j) gp_add_term(h, s.families[0].member(j, 2), ff_one(f2));
    h.model = s;
    auto w = nonpolynomial_witness(h, ones_spec(f2, {1}));
    REQUIRE(std::holds_alternative<NonIntegerExponent>(w));
    const auto& ni = std::get<NonIntegerExponent>(w);
    CHECK(ni.v == ev({-1}, 2));
    CHECK(ni.h.index() == 2);  // H = 2Z
}

TEST_CASE("polynomial input is possibly polynomial") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    GPSeries f = gp_monomial(f2, ord, ev({2, 3}), ff_one(f2));
    StructuredSupport s;
    s.p = 2;
    s.d = 2;
    s.finite = {ev({2, 3})};
    f.model = s;
    auto w = nonpolynomial_witness(f, ones_spec(f2, {2, 1}));
    CHECK(std::holds_alternative<IsPossiblyPolynomial>(w));
}

TEST_CASE("unbounded-support cone from vanishing monomials") {
    auto ord = WeightOrder(std::vector<std::vector<Rat>>{{Rat(2), Rat(1)}, {Rat(0), Rat(1)}});
    // monomials of h = y^2 - t1: (0,0,ydeg 2), (1,0,ydeg 0): quotient (u0-u2)/2 = (1/2, 0)
    std::vector<std::pair<ExpVec, unsigned>> mons{{ev({0, 0}), 2}, {ev({1, 0}), 0}};
    Cone c = unbounded_support_cone(mons, ord);
    CHECK(c.dim() == 2);
    // only one quotient point: the cone is everything
    CHECK(c.contains(std::vector<Int>{5, -7}));
}

TEST_CASE("pullback_isogeny") {
    auto f3 = Field::make(3, 1);
    // f = x^2 - y z^2 in k[x^+-, y^+-][z]: torus vars (x, y), fiber var z
    LaurentPoly f = lp_make(f3, 2);
    lp_add_term(f, ev({2, 0}), 0, ff_one(f3));
    lp_add_term(f, ev({0, 1}), 2, ff_neg(ff_one(f3)));

    SUBCASE("identity leaves it unchanged") {
        LaurentPoly g = pullback_isogeny(f, {{1, 0}, {0, 1}});
        CHECK(lp_equal(f, g));
    }
    SUBCASE("diag(1,2) yields x^2 - y^2 z^2 which factors") {
        LaurentPoly g = pullback_isogeny(f, {{1, 0}, {0, 2}});
        LaurentPoly expect = lp_make(f3, 2);
        lp_add_term(expect, ev({2, 0}), 0, ff_one(f3));
        lp_add_term(expect, ev({0, 2}), 2, ff_neg(ff_one(f3)));
        CHECK(lp_equal(g, expect));
        // (x - yz)(x + yz) = x^2 - y^2 z^2 exactly
        LaurentPoly a = lp_make(f3, 2), b = lp_make(f3, 2);
        lp_add_term(a, ev({1, 0}), 0, ff_one(f3));
        lp_add_term(a, ev({0, 1}), 1, ff_neg(ff_one(f3)));
        lp_add_term(b, ev({1, 0}), 0, ff_one(f3));
        lp_add_term(b, ev({0, 1}), 1, ff_one(f3));
        CHECK(lp_equal(lp_mul(a, b), g));
    }
    SUBCASE("singular matrix is rejected") {
        CHECK_THROWS_AS(pullback_isogeny(f, {{1, 0}, {2, 0}}), SingularMatrix);
    }

    // y - t1 under diag(3) -> y - t1^3
    LaurentPoly h = lp_make(f3, 1);
    lp_add_term(h, ev({0}), 1, ff_one(f3));
    lp_add_term(h, ev({1}), 0, ff_neg(ff_one(f3)));
    LaurentPoly h3 = pullback_isogeny(h, {{3}});
    LaurentPoly expect = lp_make(f3, 1);
    lp_add_term(expect, ev({0}), 1, ff_one(f3));
    lp_add_term(expect, ev({3}), 0, ff_neg(ff_one(f3)));
    CHECK(lp_equal(h3, expect));
}

TEST_CASE("phi is a ring homomorphism (property)") {
    std::mt19937_64 rng(61);
    auto f5 = Field::make(5, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    SubstSpec spec;
    spec.n = {2, 3};
    spec.theta = {ff_from_int(f5, 2), ff_from_int(f5, 4)};
    auto random_series = [&] {
        GPSeries f = gp_make(f5, ord);
        for (int i = 0; i < 5; ++i)
            gp_add_term(f, ev({(long)(rng() % 7) - 3, (long)(rng() % 7) - 3}),
                        ff_from_int(f5, (long)(rng() % 5)));
        return f;
    };
    for (int t = 0; t < 40; ++t) {
        GPSeries f = random_series(), g = random_series();
        auto pf = phi_series(f, spec).image;
        auto pg = phi_series(g, spec).image;
        CHECK(phi_series(gp_add(f, g), spec).image.terms == gp_add(pf, pg).terms);
        CHECK(phi_series(gp_mul(f, g), spec).image.terms == gp_mul(pf, pg).terms);
    }
}

TEST_CASE("phi commutes with root expansion") {
    auto f2 = Field::make(2, 1);
    auto ord = make_order({{2, 1}, {0, 1}});
    LaurentPoly F = lp_make(f2, 2);
    lp_add_term(F, ev({0, 0}), 2, ff_one(f2));
    lp_add_term(F, ev({0, 0}), 1, ff_one(f2));
    lp_add_term(F, ev({-1, -1}), 0, ff_one(f2));  // y^2 + y + t1^{-1} t2^{-1}
    auto roots = newton_puiseux(F, ord, Rat(0), 20, 12);
    REQUIRE(roots.complete());
    SubstSpec spec = ones_spec(f2, {2, 1});
    LaurentPoly Fx = phi_laurent(F, spec);
    for (const auto& root : roots.roots) {
        if (!root.root.model) continue;
        auto pr = phi_series(root.root, spec);
        GPSeries resid = lp_eval_y(Fx, pr.image);
        // residual only at or beyond the truncation frontier: -3/2^12
        for (const auto& [e, c] : resid.terms)
            CHECK(dot(pr.image.order->row(0), e) <= Rat(-3, Int(1) << 12));
    }
}
