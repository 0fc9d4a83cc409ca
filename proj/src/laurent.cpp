#include "gps/laurent.hpp"

namespace gps {

unsigned LaurentPoly::ydeg() const {
    unsigned m = 0;
    for (const auto& [k, c] : terms) m = std::max(m, k.second);
    return m;
}

LaurentPoly lp_make(FieldPtr field, unsigned d) {
    LaurentPoly f;
    f.field = std::move(field);
    f.d = d;
    return f;
}

void lp_add_term(LaurentPoly& f, const ExpVec& e, unsigned ydeg, const FFElem& c) {
    if (e.dim() != f.d) throw DimensionMismatch("lp_add_term");
    if (!e.is_integral()) throw SchemaError("LaurentPoly exponents must be integral");
    if (c.is_zero()) return;
    auto key = std::make_pair(e, ydeg);
    auto it = f.terms.find(key);
    if (it == f.terms.end()) {
        f.terms.emplace(key, c);
    } else {
        FFElem s = ff_add(it->second, c);
        if (s.is_zero())
            f.terms.erase(it);
        else
            it->second = s;
    }
}

LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = a;
    for (const auto& [k, c] : b.terms) lp_add_term(r, k.first, k.second, c);
    return r;
}

LaurentPoly lp_neg(const LaurentPoly& a) {
    LaurentPoly r = a;
    for (auto& [k, c] : r.terms) c = ff_neg(c);
    return r;
}

LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r = lp_make(a.field, a.d);
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms)
            lp_add_term(r, ka.first + kb.first, ka.second + kb.second, ff_mul(ca, cb));
    return r;
}

LaurentPoly lp_scale(const LaurentPoly& a, const FFElem& c) {
    LaurentPoly r = lp_make(a.field, a.d);
    for (const auto& [k, co] : a.terms) lp_add_term(r, k.first, k.second, ff_mul(co, c));
    return r;
}

LaurentPoly lp_shift(const LaurentPoly& a, const ExpVec& e) {
    LaurentPoly r = lp_make(a.field, a.d);
    for (const auto& [k, c] : a.terms) lp_add_term(r, k.first + e, k.second, c);
    return r;
}

bool lp_equal(const LaurentPoly& a, const LaurentPoly& b) {
    return a.d == b.d && a.field->same(*b.field) && a.terms == b.terms;
}

bool lp_monic_in_y(const LaurentPoly& f) {
    if (f.is_zero()) return false;
    unsigned s = f.ydeg();
    const FFElem* top = nullptr;
    for (const auto& [k, c] : f.terms) {
        if (k.second != s) continue;
        if (top) return false;  // more than one monomial at top degree
        if (!k.first.is_zero()) return false;
        top = &c;
    }
    return top && *top == ff_one(f.field);
}

LaurentPoly lp_lead_ycoeff(const LaurentPoly& f) {
    LaurentPoly r = lp_make(f.field, f.d);
    unsigned s = f.ydeg();
    for (const auto& [k, c] : f.terms)
        if (k.second == s) lp_add_term(r, k.first, 0, c);
    return r;
}

GPSeries lp_ycoeff_series(const LaurentPoly& f, unsigned k, const OrderPtr& order) {
    GPSeries s = gp_make(f.field, order);
    for (const auto& [key, c] : f.terms)
        if (key.second == k) gp_add_term(s, key.first, c);
    return s;
}

LaurentPoly lp_map_field(const LaurentPoly& f, const Embedding& emb) {
    LaurentPoly r = lp_make(emb.dst, f.d);
    for (const auto& [k, c] : f.terms) lp_add_term(r, k.first, k.second, emb.apply(c));
    return r;
}

GPSeries lp_eval_y(const LaurentPoly& f, const GPSeries& s) {
    unsigned deg = f.ydeg();
    GPSeries acc = gp_make(s.field, s.order, Cutoff::inf());  // Horner accumulator
    for (unsigned k = deg + 1; k-- > 0;) {
        acc = gp_mul(acc, s);
        GPSeries ck = lp_ycoeff_series(f, k, s.order);
        if (!ck.field->same(*s.field)) throw IncompatibleContexts("lp_eval_y field mismatch");
        acc = gp_add(acc, ck);
    }
    return acc;
}

LaurentPoly lp_monomial_substitution(const LaurentPoly& f, const IntMat& a_columns) {
    if (a_columns.size() != f.d) throw DimensionMismatch("lp_monomial_substitution");
    LaurentPoly r = lp_make(f.field, f.d);
    for (const auto& [k, c] : f.terms) {
        std::vector<Int> img(f.d, 0);
        for (unsigned i = 0; i < f.d; ++i)
            for (unsigned j = 0; j < f.d; ++j) img[j] += a_columns[i][j] * k.first.num()[i];
        // exponents are integral, den = 1
        lp_add_term(r, ExpVec(std::move(img), k.first.den()), k.second, c);
    }
    return r;
}

}  // namespace gps
