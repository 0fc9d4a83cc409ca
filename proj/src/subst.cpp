#include "gps/subst.hpp"

#include <algorithm>

namespace gps {

void SubstSpec::validate(unsigned d, const FieldPtr& field) const {
    if (n.size() != d || theta.size() != d) throw DimensionMismatch("SubstSpec");
    if (std::all_of(n.begin(), n.end(), [](const Int& x) { return x == 0; }))
        throw SchemaError("SubstSpec: n must be nonzero");
    for (const auto& t : theta) {
        if (!t.field->same(*field)) throw IncompatibleContexts("theta field mismatch");
        if (t.is_zero()) throw SchemaError("SubstSpec: theta entries must be nonzero");
    }
}

namespace {

OrderPtr univariate_order() {
    static OrderPtr ord = std::make_shared<WeightOrder>(
        std::vector<std::vector<Rat>>{{Rat(1)}});
    return ord;
}

// theta^u for u with denominator a pure p-power: iterated unique p-th roots
FFElem theta_power(const std::vector<FFElem>& theta, const ExpVec& u, const Int& p) {
    auto [nn, j] = u.den_p_part(p);
    if (nn != 1)
        throw SchemaError(
            "exponent denominator has a prime-to-p part; rescale by the isogeny first");
    FFElem r = ff_one(theta[0].field);
    for (size_t i = 0; i < theta.size(); ++i)
        r = ff_mul(r, ff_pow(theta[i], u.num()[i]));
    for (unsigned k = 0; k < j; ++k) r = ff_pth_root(r);
    return r;
}

ExpVec image_exponent(const std::vector<Int>& n, const ExpVec& u) {
    Rat r = dot(n, u);
    return ExpVec({rat_num(r)}, rat_den(r));
}

}  // namespace

PhiResult phi_series(const GPSeries& f, const SubstSpec& spec, unsigned collision_threshold) {
    spec.validate(f.dim(), f.field);
    const Int p = f.field->p;
    PhiResult out;
    out.exactness_certified = false;

    std::optional<PDiscreteCertificate> cert;
    if (f.model) {
        auto cr = pdiscrete_check(*f.model, *f.order);
        if (!is_certified(cr))
            throw FiberNeedsCertificate("support model fails certification: " +
                                        std::get<Violation>(cr).message);
        cert = std::get<PDiscreteCertificate>(cr);
        std::vector<Rat> nr(spec.n.begin(), spec.n.end());
        if (!cert->sigma.contains(nr))
            throw FiberNeedsCertificate(
                "direction lies outside the certified perturbation cone");
        for (const auto& fam : f.model->families)
            if (dot(spec.n, fam.seed - fam.limit) == 0)
                throw InfiniteFiber("every member of a support family maps to the exponent " +
                                    rat_str(dot(spec.n, fam.limit)));
    }

    GPSeries img = gp_make(f.field, univariate_order());
    std::map<ExpVec, unsigned> fiber_count;
    for (const auto& [u, c] : f.terms) {
        ExpVec e = image_exponent(spec.n, u);
        if (!f.model && ++fiber_count[e] >= collision_threshold)
            throw InfiniteFiber("stored-term collision threshold reached at x^" +
                                rat_str(dot(spec.n, u)) + " (raw mode)");
        gp_add_term(img, e, ff_mul(c, theta_power(spec.theta, u, p)));
    }

    if (!f.cutoff.finite) {
        img.cutoff = Cutoff::inf();
        out.exactness_certified = true;
    } else if (cert) {
        // min of n.a over (gamma + C) cut by {w.a >= lambda}: attained at the
        // polytope's vertices (gamma itself or edge-hyperplane intersections)
        bool bounded = true;
        for (const auto& r : cert->cone_c.rays())
            if (dot(spec.n, ExpVec::from_ints(r)) < 0) bounded = false;
        if (bounded) {
            Rat lambda = f.cutoff.value;
            Rat wg = dot(f.order->row(0), cert->gamma);
            std::optional<Rat> best;
            auto consider = [&](const Rat& v) {
                if (!best || v < *best) best = v;
            };
            if (wg >= lambda) consider(dot(spec.n, cert->gamma));
            if (wg < lambda || cert->cone_c.rays().empty()) {
                for (const auto& r : cert->cone_c.rays()) {
                    ExpVec rv = ExpVec::from_ints(r);
                    Rat wr = dot(f.order->row(0), rv);
                    if (wr <= 0) continue;
                    Rat t = (lambda - wg) / wr;
                    if (t < 0) t = 0;
                    consider(dot(spec.n, cert->gamma) + t * dot(spec.n, rv));
                }
            }
            if (best) {
                img.cutoff = Cutoff::at(*best);
                out.exactness_certified = true;
            } else {
                out.warning = "empty cutoff frontier; image treated as exact";
                img.cutoff = Cutoff::inf();
                out.exactness_certified = true;
            }
        } else {
            out.warning = "direction unbounded against the support cone; image cutoff unknown";
        }
    } else {
        out.warning = "truncated input without a support model; image cutoff not certified";
    }

    if (cert) {
        StructuredSupport im;
        im.p = f.model->p;
        im.d = 1;
        for (const auto& x : f.model->finite) im.finite.push_back(image_exponent(spec.n, x));
        for (const auto& fam : f.model->families)
            im.families.push_back({image_exponent(spec.n, fam.limit),
                                   image_exponent(spec.n, fam.seed), fam.start_index});
        img.model = im;
    }
    out.image = std::move(img);
    return out;
}

LaurentPoly phi_laurent(const LaurentPoly& f, const SubstSpec& spec) {
    spec.validate(f.d, f.field);
    LaurentPoly r = lp_make(f.field, 1);
    for (const auto& [k, c] : f.terms) {
        FFElem tc = ff_one(f.field);
        for (unsigned i = 0; i < f.d; ++i) tc = ff_mul(tc, ff_pow(spec.theta[i], k.first.num()[i]));
        lp_add_term(r, image_exponent(spec.n, k.first), k.second, ff_mul(c, tc));
    }
    return r;
}

Cone unbounded_support_cone(const std::vector<std::pair<ExpVec, unsigned>>& monomials,
                            const WeightOrder& order) {
    // quotient points (u_r - u_s)/(s - r) over pairs of distinct y-degrees;
    // the cone where the order-max point keeps the maximal n-value
    std::vector<ExpVec> pts;
    for (size_t a = 0; a < monomials.size(); ++a)
        for (size_t b = 0; b < monomials.size(); ++b) {
            if (monomials[a].second == monomials[b].second) continue;
            long dr = (long)monomials[b].second - (long)monomials[a].second;
            pts.push_back((monomials[a].first - monomials[b].first).scaled(make_rat(1, dr)));
        }
    if (pts.empty()) return Cone::full_space(order.dim());
    ExpVec vstar = pts[0];
    for (const auto& q : pts)
        if (order.compare(q, vstar) == Cmp::GT) vstar = q;
    std::vector<std::vector<Int>> hs;
    for (const auto& q : pts) {
        if (q == vstar) continue;
        hs.push_back(clear_denominators((vstar - q).coords()));
    }
    return Cone::from_halfspaces(order.dim(), std::move(hs));
}

SubstWitness nonpolynomial_witness(const GPSeries& alpha, const SubstSpec& spec,
                                   const Int& min_index,
                                   const std::vector<std::pair<ExpVec, unsigned>>& vanishing_monomials,
                                   unsigned family_search_depth) {
    spec.validate(alpha.dim(), alpha.field);
    if (!alpha.model) throw NoSupportModel("nonpolynomial_witness needs a support model");
    const StructuredSupport& s = *alpha.model;
    auto cr = pdiscrete_check(s, *alpha.order);
    if (!is_certified(cr))
        throw NoSupportModel("support model fails certification: " +
                             std::get<Violation>(cr).message);
    const auto& cert = std::get<PDiscreteCertificate>(cr);

    for (const auto& fam : s.families)
        if (dot(spec.n, fam.seed - fam.limit) == 0)
            throw InfiniteFiber("family collapses under this direction");

    // the full fiber over r is computable exactly on a structured support
    auto fiber_size = [&](const Rat& r) {
        unsigned count = 0;
        for (const auto& x : s.finite)
            if (dot(spec.n, x) == r) ++count;
        for (const auto& fam : s.families) {
            Rat q = dot(spec.n, fam.limit);
            Rat dv = dot(spec.n, fam.seed - fam.limit);
            Rat c = (r - q) / dv;  // p^{-j} if a member maps to r
            if (c <= 0) continue;
            if (rat_num(c) != 1) continue;
            auto [nn, j] = p_part(rat_den(c), s.p);
            if (nn == 1 && j >= fam.start_index) ++count;
        }
        return count;
    };
    auto try_witness = [&](const ExpVec& v) -> std::optional<NonIntegerExponent> {
        Rat r = dot(spec.n, v);
        if (rat_den(r) == 1) return std::nullopt;      // integral image exponent
        if (fiber_size(r) != 1) return std::nullopt;   // could cancel
        IntLattice h = lattice_of_integrality(v);
        if (h.index() < min_index) return std::nullopt;
        return NonIntegerExponent{v, std::move(h)};
    };

    for (const auto& x : s.finite)
        if (auto w = try_witness(x)) return *w;
    for (const auto& fam : s.families)
        for (unsigned j = fam.start_index; j < fam.start_index + family_search_depth; ++j)
            if (auto w = try_witness(fam.member(j, s.p))) return *w;

    if (!vanishing_monomials.empty()) {
        Cone c1 = unbounded_support_cone(vanishing_monomials, *alpha.order);
        return UnboundedSupportCone{intersect(c1, cert.sigma)};
    }
    return IsPossiblyPolynomial{};
}

LaurentPoly pullback_isogeny(const LaurentPoly& f, const IntMat& a_columns) {
    if (a_columns.size() != f.d) throw DimensionMismatch("pullback_isogeny");
    IntMat rows(f.d, std::vector<Int>(f.d));
    for (unsigned i = 0; i < f.d; ++i)
        for (unsigned j = 0; j < f.d; ++j) rows[i][j] = a_columns[j][i];
    if (det_int(rows) == 0) throw SingularMatrix("isogeny matrix must be nonsingular");
    return lp_monomial_substitution(f, a_columns);
}

}  // namespace gps
