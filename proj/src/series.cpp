#include "gps/series.hpp"

#include <algorithm>

namespace gps {

bool same_context(const GPSeries& f, const GPSeries& g) {
    return f.field->same(*g.field) && f.order->rows() == g.order->rows();
}

static void check_context(const GPSeries& f, const GPSeries& g) {
    if (!same_context(f, g)) throw IncompatibleContexts("series contexts differ");
}

GPSeries gp_make(FieldPtr field, OrderPtr order, Cutoff cutoff) {
    GPSeries f;
    f.field = std::move(field);
    f.order = std::move(order);
    f.cutoff = cutoff;
    return f;
}

GPSeries gp_constant(FieldPtr field, OrderPtr order, const FFElem& c) {
    GPSeries f = gp_make(std::move(field), std::move(order));
    gp_add_term(f, ExpVec::zero(f.dim()), c);
    return f;
}

GPSeries gp_monomial(FieldPtr field, OrderPtr order, const ExpVec& e, const FFElem& c) {
    GPSeries f = gp_make(std::move(field), std::move(order));
    gp_add_term(f, e, c);
    return f;
}

void gp_add_term(GPSeries& f, const ExpVec& e, const FFElem& c) {
    if (c.is_zero()) return;
    if (f.cutoff.finite && !(dot(f.order->row(0), e) < f.cutoff.value)) return;
    auto it = f.terms.find(e);
    if (it == f.terms.end()) {
        f.terms.emplace(e, c);
    } else {
        FFElem s = ff_add(it->second, c);
        if (s.is_zero())
            f.terms.erase(it);
        else
            it->second = s;
    }
}

Cutoff gp_val_lb(const GPSeries& f) {
    if (f.terms.empty()) return f.cutoff;
    bool first = true;
    Rat best;
    for (const auto& [e, c] : f.terms) {
        Rat v = dot(f.order->row(0), e);
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return Cutoff::at(best);
}

std::optional<Rat> gp_valuation(const GPSeries& f) {
    if (f.terms.empty()) {
        if (!f.cutoff.finite) return std::nullopt;  // exact zero, nu = +inf
        throw IndeterminateValuation("no stored term below the finite cutoff " +
                                     f.cutoff.str());
    }
    return gp_val_lb(f).value;
}

std::pair<ExpVec, FFElem> gp_leading_term(const GPSeries& f) {
    if (f.terms.empty()) throw IndeterminateValuation("leading term of a term-free series");
    const ExpVec* best = nullptr;
    for (const auto& [e, c] : f.terms)
        if (!best || f.order->less(e, *best)) best = &e;
    return {*best, f.terms.at(*best)};
}

static std::optional<StructuredSupport> merge_models(const GPSeries& f, const GPSeries& g) {
    if (!f.model || !g.model) return std::nullopt;
    return support_union(*f.model, *g.model);
}

GPSeries gp_add(const GPSeries& f, const GPSeries& g) {
    check_context(f, g);
    GPSeries r = gp_make(f.field, f.order, min(f.cutoff, g.cutoff));
    for (const auto& [e, c] : f.terms) gp_add_term(r, e, c);
    for (const auto& [e, c] : g.terms) gp_add_term(r, e, c);
    r.model = merge_models(f, g);
    return r;
}

GPSeries gp_neg(const GPSeries& f) {
    GPSeries r = f;
    for (auto& [e, c] : r.terms) c = ff_neg(c);
    return r;
}

GPSeries gp_sub(const GPSeries& f, const GPSeries& g) { return gp_add(f, gp_neg(g)); }

GPSeries gp_scalar_mul(const GPSeries& f, const FFElem& c) {
    if (c.is_zero()) {
        GPSeries r = gp_make(f.field, f.order, Cutoff::inf());
        return r;
    }
    GPSeries r = f;
    for (auto& [e, co] : r.terms) co = ff_mul(co, c);
    // products with a unit cannot create zeros
    return r;
}

GPSeries gp_mul(const GPSeries& f, const GPSeries& g) {
    check_context(f, g);
    if (f.exact_zero() || g.exact_zero()) return gp_make(f.field, f.order, Cutoff::inf());
    Cutoff cf = f.cutoff, cg = g.cutoff;
    Cutoff vf = gp_val_lb(f), vg = gp_val_lb(g);
    Cutoff rcut = Cutoff::inf();
    if (cf.finite) rcut = min(rcut, vg.finite ? cf.shifted(vg.value) : Cutoff::inf());
    if (cg.finite) rcut = min(rcut, vf.finite ? cg.shifted(vf.value) : Cutoff::inf());
    // a finite cutoff with an exact-zero partner still bounds nothing: the
    // product of the unknown tail with 0 vanishes, so only finite vals matter
    GPSeries r = gp_make(f.field, f.order, rcut);
    for (const auto& [ea, ca] : f.terms)
        for (const auto& [eb, cb] : g.terms) gp_add_term(r, ea + eb, ff_mul(ca, cb));

    if (f.model && g.model) {
        // Minkowski sum is expressible only when one side is finite
        const StructuredSupport *fin = nullptr, *other = nullptr;
        if (f.model->families.empty()) {
            fin = &*f.model;
            other = &*g.model;
        } else if (g.model->families.empty()) {
            fin = &*g.model;
            other = &*f.model;
        }
        if (fin) {
            StructuredSupport acc;
            acc.p = other->p;
            acc.d = other->d;
            for (const auto& x : fin->finite)
                acc = support_union(acc, support_translate(*other, x));
            r.model = acc;
        }
    }
    return r;
}

GPSeries gp_pow(const GPSeries& f, unsigned e) {
    GPSeries r = gp_constant(f.field, f.order, ff_one(f.field));
    GPSeries base = f;
    while (e) {
        if (e & 1) r = gp_mul(r, base);
        e >>= 1;
        if (e) base = gp_mul(base, base);
    }
    return r;
}

GPSeries gp_frobenius_pow(const GPSeries& f) {
    const Int p = f.field->p;
    GPSeries r = gp_make(f.field, f.order, f.cutoff.scaled(Rat(p)));
    for (const auto& [e, c] : f.terms)
        r.terms.emplace(e.scaled(Rat(p)), ff_pow(c, p));
    if (f.model) r.model = support_scale(*f.model, Rat(p));
    return r;
}

GPSeries gp_pth_root(const GPSeries& f) {
    const Int p = f.field->p;
    GPSeries r = gp_make(f.field, f.order, f.cutoff.scaled(Rat(1, p)));
    for (const auto& [e, c] : f.terms)
        r.terms.emplace(e.scaled(Rat(1, p)), ff_pth_root(c));
    if (f.model) r.model = support_scale(*f.model, Rat(1, p));
    return r;
}

std::pair<GPSeries, GPSeries> gp_split_pm(const GPSeries& f) {
    GPSeries plus = gp_make(f.field, f.order, f.cutoff);
    GPSeries minus = gp_make(f.field, f.order, f.cutoff);
    ExpVec zero = ExpVec::zero(f.dim());
    for (const auto& [e, c] : f.terms) {
        if (f.order->compare(e, zero) == Cmp::LT)
            minus.terms.emplace(e, c);
        else
            plus.terms.emplace(e, c);
    }
    if (f.model) {
        auto sp = split_at(*f.model, zero, *f.order);
        minus.model = sp.minus;
        plus.model = sp.plus;
        if (f.model->contains(zero)) plus.model->finite.push_back(zero);
    }
    return {plus, minus};
}

GPSeries gp_div(const GPSeries& f, const GPSeries& g, size_t max_steps) {
    check_context(f, g);
    if (g.terms.empty()) throw ZeroPolynomial("series division by zero");
    auto [eg, cg] = gp_leading_term(g);
    Rat vg = dot(g.order->row(0), eg);
    FFElem cg_inv = ff_inv(cg);

    // q exact below min(cut_f - v_g, cut_g - 2 v_g + v_f)
    Cutoff qcut = Cutoff::inf();
    if (f.cutoff.finite) qcut = min(qcut, f.cutoff.shifted(-vg));
    if (g.cutoff.finite) {
        Cutoff vf = gp_val_lb(f);
        if (vf.finite) qcut = min(qcut, g.cutoff.shifted(vf.value - vg - vg));
    }
    GPSeries q = gp_make(f.field, f.order, qcut);
    GPSeries r = f;
    size_t steps = 0;
    while (!r.terms.empty()) {
        if (++steps > max_steps) throw ResourceBound("series division exceeded step bound");
        auto [er, cr] = gp_leading_term(r);
        ExpVec eq = er - eg;
        if (qcut.finite && !(dot(q.order->row(0), eq) < qcut.value)) {
            // everything further is beyond the exactness region
            break;
        }
        FFElem cq = ff_mul(cr, cg_inv);
        gp_add_term(q, eq, cq);
        GPSeries t = gp_make(f.field, f.order, Cutoff::inf());
        gp_add_term(t, eq, cq);
        r = gp_sub(r, gp_mul(t, g));
        // drop remainder terms that can no longer affect exact quotient terms
        if (qcut.finite) {
            for (auto it = r.terms.begin(); it != r.terms.end();) {
                if (!(dot(r.order->row(0), it->first) - vg < qcut.value))
                    it = r.terms.erase(it);
                else
                    ++it;
            }
        }
    }
    return q;
}

InKCResult in_K_C(const GPSeries& f, const Cone& c) {
    if (!f.model) throw NoSupportModel("in_K_C needs a certified support model");
    auto cr = pdiscrete_check(*f.model, *f.order);
    if (!is_certified(cr))
        return {false, "support model is not certified: " + std::get<Violation>(cr).message,
                Cone::full_space(f.dim())};
    const auto& cert = std::get<PDiscreteCertificate>(cr);
    const Int& p = f.model->p;
    auto pure_p = [&](const ExpVec& e) { return e.den_p_part(p).first == 1; };
    for (const auto& x : f.model->finite)
        if (!pure_p(x)) return {false, "exponent with prime-to-p denominator", cert.sigma};
    for (const auto& fam : f.model->families)
        if (!pure_p(fam.limit) || !pure_p(fam.seed))
            return {false, "family parameter with prime-to-p denominator", cert.sigma};
    if (!c.subset_of(cert.sigma))
        return {false, "cone is not contained in the certified perturbation cone", cert.sigma};
    return {true, "", cert.sigma};
}

GPSeries gp_map_field(const GPSeries& f, const Embedding& emb) {
    if (!f.field->same(*emb.src)) throw IncompatibleContexts("gp_map_field: wrong source field");
    GPSeries r = gp_make(emb.dst, f.order, f.cutoff);
    for (const auto& [e, c] : f.terms) r.terms.emplace(e, emb.apply(c));
    r.model = f.model;
    return r;
}

StructuredSupport support_scale(const StructuredSupport& s, const Rat& c) {
    if (c <= 0) throw SchemaError("support_scale needs a positive scalar");
    StructuredSupport r;
    r.p = s.p;
    r.d = s.d;
    for (const auto& x : s.finite) r.finite.push_back(x.scaled(c));
    for (const auto& f : s.families)
        r.families.push_back({f.limit.scaled(c), f.seed.scaled(c), f.start_index});
    return r;
}

}  // namespace gps
