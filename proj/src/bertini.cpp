#include "gps/bertini.hpp"

#include <algorithm>
#include <cassert>
#include <random>

namespace gps {

namespace {

// ---- bivariate scratch representation: y-coeffs as Laurent-in-x maps --------

using XCoeff = std::map<long, FFElem>;    // x-exponent -> coefficient
using BPoly = std::vector<XCoeff>;        // index = y-degree

void xc_add(XCoeff& a, long e, const FFElem& c) {
    if (c.is_zero()) return;
    auto it = a.find(e);
    if (it == a.end()) {
        a.emplace(e, c);
    } else {
        FFElem s = ff_add(it->second, c);
        if (s.is_zero())
            a.erase(it);
        else
            it->second = s;
    }
}

void btrim(BPoly& f) {
    while (!f.empty() && f.back().empty()) f.pop_back();
}

BPoly bp_from_lp(const LaurentPoly& f) {
    BPoly r;
    for (const auto& [k, c] : f.terms) {
        if (k.second >= r.size()) r.resize(k.second + 1);
        xc_add(r[k.second], (long)k.first.num()[0], c);
    }
    return r;
}

LaurentPoly bp_to_lp(const BPoly& f, const FieldPtr& fld) {
    LaurentPoly r = lp_make(fld, 1);
    for (size_t k = 0; k < f.size(); ++k)
        for (const auto& [e, c] : f[k]) lp_add_term(r, ExpVec({Int(e)}, 1), (unsigned)k, c);
    return r;
}

long bp_ydeg(const BPoly& f) { return (long)f.size() - 1; }

bool bp_is_monic(const BPoly& f) {
    if (f.empty()) return false;
    const XCoeff& top = f.back();
    return top.size() == 1 && top.begin()->first == 0 && ff_one(top.begin()->second.field) == top.begin()->second;
}

BPoly bp_mul(const BPoly& a, const BPoly& b) {
    if (a.empty() || b.empty()) return {};
    BPoly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (const auto& [ea, ca] : a[i])
            for (size_t j = 0; j < b.size(); ++j)
                for (const auto& [eb, cb] : b[j]) xc_add(r[i + j], ea + eb, ff_mul(ca, cb));
    btrim(r);
    return r;
}

BPoly bp_sub(const BPoly& a, const BPoly& b) {
    BPoly r = a;
    if (r.size() < b.size()) r.resize(b.size());
    for (size_t i = 0; i < b.size(); ++i)
        for (const auto& [e, c] : b[i]) xc_add(r[i], e, ff_neg(c));
    btrim(r);
    return r;
}

// exact division by a monic-in-y polynomial; returns false if not divisible
bool bp_divmod_monic(const BPoly& a, const BPoly& b, BPoly& q) {
    assert(bp_is_monic(b));
    BPoly r = a;
    btrim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, {});
    while (bp_ydeg(r) >= bp_ydeg(b)) {
        size_t shift = r.size() - b.size();
        XCoeff lead = r.back();  // divide by the monic top: quotient coeff = lead
        for (const auto& [e, c] : lead) xc_add(q[shift], e, c);
        for (size_t j = 0; j < b.size(); ++j)
            for (const auto& [eb, cb] : b[j])
                for (const auto& [el, cl] : lead)
                    xc_add(r[shift + j], eb + el, ff_neg(ff_mul(cb, cl)));
        btrim(r);
    }
    btrim(r);
    return r.empty();
}

BPoly bp_deriv_y(const BPoly& f) {
    BPoly r;
    if (f.size() <= 1) return r;
    r.resize(f.size() - 1);
    const FieldPtr& fld = [&] {
        for (const auto& xc : f)
            if (!xc.empty()) return xc.begin()->second.field;
        throw ZeroPolynomial("bp_deriv_y");
    }();
    for (size_t k = 1; k < f.size(); ++k) {
        FFElem kk = ff_from_int(fld, Int(k));
        if (kk.is_zero()) continue;
        for (const auto& [e, c] : f[k]) xc_add(r[k - 1], e, ff_mul(c, kk));
    }
    btrim(r);
    return r;
}

// poly part of a Laurent coefficient, x-units stripped
FqPoly xc_poly_part(const XCoeff& xc, const FieldPtr& fld) {
    FqPoly p(fld);
    if (xc.empty()) return p;
    long lo = xc.begin()->first;
    for (const auto& [e, c] : xc) p.set_coeff((size_t)(e - lo), c);
    return p;
}

// content of a BPoly = gcd of the poly parts (x is a unit of the Laurent ring)
FqPoly bp_content(const BPoly& f, const FieldPtr& fld) {
    FqPoly g(fld);
    for (const auto& xc : f) {
        if (xc.empty()) continue;
        g = g.is_zero() ? xc_poly_part(xc, fld) : poly_gcd(g, xc_poly_part(xc, fld));
        if (g.deg() == 0) break;
    }
    return g;
}

XCoeff xc_from_poly(const FqPoly& p, long shift) {
    XCoeff r;
    for (size_t i = 0; i < p.ncoeffs(); ++i) {
        FFElem c = p.coeff(i);
        if (!c.is_zero()) r.emplace(shift + (long)i, c);
    }
    return r;
}

// divide every coefficient's poly part by the content
BPoly bp_primitive(const BPoly& f, const FieldPtr& fld) {
    FqPoly cont = bp_content(f, fld);
    if (cont.deg() <= 0) return f;
    BPoly r(f.size());
    for (size_t k = 0; k < f.size(); ++k) {
        if (f[k].empty()) continue;
        long lo = f[k].begin()->first;
        FqPoly p = xc_poly_part(f[k], fld), q(fld), rem(fld);
        poly_divmod(p, cont, q, rem);
        assert(rem.is_zero());
        r[k] = xc_from_poly(q, lo);
    }
    btrim(r);
    return r;
}

// normalize so the y-leading coefficient is exactly 1 (requires it to be a
// unit of the Laurent ring, i.e. a single monomial)
bool bp_normalize_monic(BPoly& f, const FieldPtr& fld) {
    btrim(f);
    if (f.empty()) return false;
    const XCoeff& top = f.back();
    if (top.size() != 1) return false;
    long sh = top.begin()->first;
    FFElem inv = ff_inv(top.begin()->second);
    BPoly r(f.size());
    for (size_t k = 0; k < f.size(); ++k)
        for (const auto& [e, c] : f[k]) r[k].emplace(e - sh, ff_mul(c, inv));
    (void)fld;
    f = std::move(r);
    return true;
}

// gcd of two y-polynomials over F_q(x), via a primitive pseudo-remainder
// sequence; the result is normalized monic in y (and must be unit-led)
BPoly bp_gcd(BPoly a, BPoly b, const FieldPtr& fld) {
    btrim(a);
    btrim(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    if (bp_ydeg(a) < bp_ydeg(b)) std::swap(a, b);
    a = bp_primitive(a, fld);
    b = bp_primitive(b, fld);
    while (!b.empty() && bp_ydeg(b) > 0) {
        // pseudo-remainder of a by b
        BPoly r = a;
        while (bp_ydeg(r) >= bp_ydeg(b)) {
            size_t shift = r.size() - b.size();
            XCoeff lead_r = r.back();
            XCoeff lead_b = b.back();
            // r = lead_b * r - lead_r * y^shift * b
            BPoly nr(r.size());
            for (size_t k = 0; k < r.size(); ++k)
                for (const auto& [er, cr] : r[k])
                    for (const auto& [eb, cb] : lead_b) xc_add(nr[k], er + eb, ff_mul(cr, cb));
            for (size_t j = 0; j < b.size(); ++j)
                for (const auto& [eb, cb] : b[j])
                    for (const auto& [el, cl] : lead_r)
                        xc_add(nr[shift + j], eb + el, ff_neg(ff_mul(cb, cl)));
            btrim(nr);
            r = std::move(nr);
            if (r.empty()) break;
        }
        a = std::move(b);
        b = bp_primitive(r, fld);
        btrim(b);
    }
    if (!b.empty()) {  // nonzero constant-in-y gcd: coprime up to units
        BPoly one(1);
        one[0].emplace(0, ff_one(fld));
        return one;
    }
    if (!bp_normalize_monic(a, fld))
        throw SchemaError("bp_gcd: gcd of a monic polynomial is not unit-led");
    return a;
}

// ---- truncated power series in z over F_{q^e}, as FqPoly mod z^K ------------

FqPoly ps_trunc(const FqPoly& a, unsigned K) {
    FqPoly r(a.field());
    for (size_t i = 0; i < std::min<size_t>(a.ncoeffs(), K); ++i) r.set_coeff(i, a.coeff(i));
    return r;
}

FqPoly ps_mul(const FqPoly& a, const FqPoly& b, unsigned K) { return ps_trunc(a * b, K); }

// (xi + z)^k mod z^K for integer k (negative allowed, xi != 0)
FqPoly x_power_series(const FFElem& xi, long k, unsigned K) {
    const FieldPtr& fld = xi.field;
    FqPoly base(fld);
    base.set_coeff(0, xi);
    base.set_coeff(1, ff_one(fld));
    FqPoly inv(fld);
    if (k < 0) {
        // (xi+z)^{-1} = sum (-1)^i xi^{-i-1} z^i
        FFElem xi_inv = ff_inv(xi);
        FFElem c = xi_inv;
        for (unsigned i = 0; i < K; ++i) {
            inv.set_coeff(i, c);
            c = ff_neg(ff_mul(c, xi_inv));
        }
    }
    FqPoly r = FqPoly::one(fld);
    const FqPoly& b = k < 0 ? inv : base;
    unsigned e = (unsigned)(k < 0 ? -k : k);
    FqPoly acc = b;
    while (e) {
        if (e & 1) r = ps_mul(r, acc, K);
        e >>= 1;
        if (e) acc = ps_mul(acc, acc, K);
    }
    return r;
}

// y-polynomial with z-series coefficients
using ZPoly = std::vector<FqPoly>;

ZPoly bp_series_at(const BPoly& f, const FFElem& xi, unsigned K) {
    ZPoly r;
    const FieldPtr& fld = xi.field;
    for (const auto& xc : f) {
        FqPoly s(fld);
        for (const auto& [e, c] : xc) {
            FqPoly t = x_power_series(xi, e, K);
            s = s + poly_scale(t, c);
        }
        r.push_back(ps_trunc(s, K));
    }
    return r;
}

// z-slice: the y-polynomial made of the z^i coefficients
FqPoly zslice(const ZPoly& f, unsigned i, const FieldPtr& fld) {
    FqPoly r(fld);
    for (size_t k = 0; k < f.size(); ++k) {
        if (i < f[k].ncoeffs()) r.set_coeff(k, f[k].coeff(i));
    }
    return r;
}

ZPoly zp_mul(const ZPoly& a, const ZPoly& b, unsigned K, const FieldPtr& fld) {
    if (a.empty() || b.empty()) return {};
    ZPoly r(a.size() + b.size() - 1, FqPoly(fld));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + ps_mul(a[i], b[j], K);
    return r;
}

// multifactor linear Hensel lift: locals are the coprime monic factors of the
// fiber at z = 0; returns monic lifts with product == gz mod z^K
std::vector<ZPoly> hensel_lift_factors(const ZPoly& gz, const std::vector<FqPoly>& locals,
                                       unsigned K, const FieldPtr& fld) {
    std::vector<ZPoly> G;
    for (const auto& u : locals) {
        ZPoly gi(u.ncoeffs(), FqPoly(fld));
        for (size_t k = 0; k < u.ncoeffs(); ++k) {
            FqPoly c(fld);
            FFElem uc = u.coeff(k);
            if (!uc.is_zero()) c.set_coeff(0, uc);
            gi[k] = c;
        }
        G.push_back(std::move(gi));
    }
    // Bezout data: inverse of prod_{j != i} u_j modulo u_i
    std::vector<FqPoly> inv;
    for (size_t i = 0; i < locals.size(); ++i) {
        FqPoly prod = FqPoly::one(fld);
        for (size_t j = 0; j < locals.size(); ++j)
            if (j != i) prod = poly_mod(prod * locals[j], locals[i]);
        inv.push_back(poly_invmod(prod, locals[i]));
    }
    for (unsigned k = 1; k < K; ++k) {
        ZPoly prod = G[0];
        for (size_t i = 1; i < G.size(); ++i) prod = zp_mul(prod, G[i], k + 1, fld);
        // error at order z^k
        ZPoly err(gz.size(), FqPoly(fld));
        for (size_t t = 0; t < gz.size(); ++t) {
            FqPoly e = gz[t];
            if (t < prod.size()) e = e - prod[t];
            err[t] = e;
        }
        FqPoly ek = zslice(err, k, fld);
        if (ek.is_zero()) continue;
        for (size_t i = 0; i < locals.size(); ++i) {
            FqPoly delta = poly_mod(ek * inv[i], locals[i]);
            if (delta.is_zero()) continue;
            for (size_t t = 0; t < delta.ncoeffs(); ++t) {
                FFElem dc = delta.coeff(t);
                if (dc.is_zero()) continue;
                FqPoly add(fld);
                add.set_coeff(k, dc);
                G[i][t] = G[i][t] + add;
            }
        }
    }
    return G;
}

// reconstruct the x-window Laurent coefficient from its z-series, or fail
std::optional<XCoeff> window_lift(const FqPoly& series, const FFElem& xi, long lo, unsigned W,
                                  unsigned K) {
    const FieldPtr& fld = xi.field;
    FqPoly t = ps_mul(series, x_power_series(xi, -lo, K), K);
    for (size_t i = W; i < t.ncoeffs(); ++i)
        if (!t.coeff(i).is_zero()) return std::nullopt;
    // substitute z = x - xi: p(x) = t(x - xi)
    FqPoly p(fld);
    FqPoly xmxi(fld);
    xmxi.set_coeff(0, ff_neg(xi));
    xmxi.set_coeff(1, ff_one(fld));
    FqPoly pw = FqPoly::one(fld);
    for (size_t i = 0; i < std::min<size_t>(t.ncoeffs(), W); ++i) {
        p = p + poly_scale(pw, t.coeff(i));
        pw = pw * xmxi;
    }
    return xc_from_poly(p, lo);
}

struct SquarefreeFactorizer {
    FieldPtr fld;
    uint64_t seed;

    // exponent window of a monic BPoly
    static void window(const BPoly& f, long& lo, long& hi) {
        lo = 0;
        hi = 0;
        for (const auto& xc : f)
            for (const auto& [e, c] : xc) {
                lo = std::min(lo, e);
                hi = std::max(hi, e);
            }
    }

    // all monic irreducible factors over fld; input squarefree monic
    std::vector<BPoly> run(const BPoly& g) {
        if (bp_ydeg(g) <= 1) return {g};
        long lo, hi;
        window(g, lo, hi);
        unsigned W = (unsigned)(hi - lo + 1);
        unsigned K = W + 2;

        // find a specialization point with a squarefree fiber
        FieldPtr fe = fld;
        unsigned e = 1;
        FFElem xi = ff_zero(fld);
        FqPoly fiber(fld);
        for (;; ++e) {
            fe = extension_of(fld, e);
            Embedding emb = e == 1 ? Embedding{fld, fld, fld->k >= 2 ? ff_gen(fld) : ff_zero(fld)}
                                   : embed_field(fld, fe, seed);
            BPoly ge = embed_bp(g, emb);
            bool found = false;
            // deterministic sweep of F_{q^e}^*
            std::vector<uint32_t> coords(fe->k, 0);
            for (Int count = 0; count < fe->cardinality(); ++count) {
                // odometer
                unsigned i = 0;
                while (i < fe->k && ++coords[i] == fe->p) coords[i++] = 0;
                FFElem cand{fe, coords};
                if (cand.is_zero()) continue;
                FqPoly u = fiber_at(ge, cand);
                if (u.deg() != bp_ydeg(g)) continue;
                if (poly_gcd(u, poly_derivative(u)).deg() == 0) {
                    xi = cand;
                    fiber = u;
                    found = true;
                    break;
                }
            }
            if (found) break;
            if (e > 6) throw ResourceBound("no squarefree specialization found");
        }

        Embedding emb = embed_field(fld, fe, seed);
        BPoly ge = embed_bp(g, emb);
        FactorResult fr = factor_univariate(fiber, false, seed);
        std::vector<FqPoly> locals;
        for (const auto& fu : fr.factors) locals.push_back(fu.factor);
        if (locals.size() == 1) return {g};  // irreducible fiber => irreducible

        ZPoly gz = bp_series_at(ge, xi, K);
        std::vector<ZPoly> lifted = hensel_lift_factors(gz, locals, K, fe);

        // recombine subsets over fe, smallest first
        std::vector<BPoly> fe_factors;
        std::vector<size_t> pool(locals.size());
        for (size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        BPoly rem = ge;
        while (!pool.empty()) {
            bool split = false;
            for (size_t sz = 1; sz <= pool.size() && !split; ++sz) {
                std::vector<size_t> idx(sz);
                std::function<bool(size_t, size_t)> choose = [&](size_t from, size_t k) {
                    if (k == sz) {
                        std::vector<size_t> subset;
                        for (size_t i : idx) subset.push_back(pool[i]);
                        auto cand = try_subset(rem, lifted, subset, xi, lo, W, K, fe);
                        if (!cand) return false;
                        fe_factors.push_back(cand->first);
                        rem = cand->second;
                        std::vector<size_t> np;
                        for (size_t i = 0; i < pool.size(); ++i)
                            if (std::find(idx.begin(), idx.end(), i) == idx.end())
                                np.push_back(pool[i]);
                        pool = np;
                        return true;
                    }
                    for (size_t i = from; i < pool.size(); ++i) {
                        idx[k] = i;
                        if (choose(i + 1, k + 1)) return true;
                    }
                    return false;
                };
                split = choose(0, 0);
                if (sz == pool.size() && !split) {
                    // the remaining product is irreducible over fe
                    fe_factors.push_back(rem);
                    pool.clear();
                }
            }
            if (bp_ydeg(rem) == 0) break;
        }

        if (e == 1) return fe_factors;
        // merge Frobenius orbits back down to fld
        return merge_orbits(g, fe_factors, fe, emb);
    }

    FqPoly fiber_at(const BPoly& f, const FFElem& xi) {
        FqPoly u(xi.field);
        for (size_t k = 0; k < f.size(); ++k) {
            FFElem v = ff_zero(xi.field);
            for (const auto& [e, c] : f[k]) v = ff_add(v, ff_mul(c, ff_pow(xi, Int(e))));
            u.set_coeff(k, v);
        }
        return u;
    }

    static BPoly embed_bp(const BPoly& f, const Embedding& emb) {
        if (emb.src->same(*emb.dst)) return f;
        BPoly r(f.size());
        for (size_t k = 0; k < f.size(); ++k)
            for (const auto& [e, c] : f[k]) r[k].emplace(e, emb.apply(c));
        return r;
    }

    // try one subset: reconstruct, verify by exact division; returns
    // (factor, cofactor) on success
    std::optional<std::pair<BPoly, BPoly>> try_subset(const BPoly& rem,
                                                      const std::vector<ZPoly>& lifted,
                                                      const std::vector<size_t>& subset,
                                                      const FFElem& xi, long lo, unsigned W,
                                                      unsigned K, const FieldPtr& fe) {
        ZPoly prod = lifted[subset[0]];
        for (size_t i = 1; i < subset.size(); ++i) prod = zp_mul(prod, lifted[subset[i]], K, fe);
        BPoly cand(prod.size());
        for (size_t k = 0; k < prod.size(); ++k) {
            if (prod[k].is_zero()) continue;
            // the top coefficient is exactly 1
            if (k + 1 == prod.size()) {
                cand[k].emplace(0, ff_one(fe));
                continue;
            }
            auto xc = window_lift(prod[k], xi, lo, W, K);
            if (!xc) return std::nullopt;
            cand[k] = std::move(*xc);
        }
        btrim(cand);
        if (cand.empty() || !bp_is_monic(cand)) return std::nullopt;
        BPoly q;
        if (!bp_divmod_monic(rem, cand, q)) return std::nullopt;
        return std::make_pair(cand, q);
    }

    std::vector<BPoly> merge_orbits(const BPoly& g, std::vector<BPoly> parts, const FieldPtr& fe,
                                    const Embedding& emb) {
        auto frob = [&](const BPoly& f) {
            BPoly r(f.size());
            Int q = pow_int(Int(fld->p), fld->k);
            for (size_t k = 0; k < f.size(); ++k)
                for (const auto& [e, c] : f[k]) r[k].emplace(e, ff_pow(c, q));
            return r;
        };
        auto equal_bp = [](const BPoly& a, const BPoly& b) {
            if (a.size() != b.size()) return false;
            for (size_t k = 0; k < a.size(); ++k)
                if (!(a[k] == b[k])) return false;
            return true;
        };
        std::vector<BPoly> out;
        std::vector<bool> used(parts.size(), false);
        for (size_t i = 0; i < parts.size(); ++i) {
            if (used[i]) continue;
            BPoly prod = parts[i];
            used[i] = true;
            BPoly cur = frob(parts[i]);
            while (!equal_bp(cur, parts[i])) {
                size_t j = 0;
                for (; j < parts.size(); ++j)
                    if (!used[j] && equal_bp(parts[j], cur)) break;
                if (j == parts.size())
                    throw SchemaError("Frobenius orbit left the factor set");
                used[j] = true;
                prod = bp_mul(prod, parts[j]);
                cur = frob(cur);
            }
            // coefficients are Frobenius-fixed: pull back along the embedding
            BPoly down(prod.size());
            for (size_t k = 0; k < prod.size(); ++k)
                for (const auto& [e, c] : prod[k]) {
                    auto u = embedding_preimage(emb, c);
                    if (!u) throw SchemaError("orbit product not defined over the base");
                    down[k].emplace(e, *u);
                }
            out.push_back(std::move(down));
        }
        (void)g;
        return out;
    }
};

// distinct irreducible monic factors of a monic BPoly over fld (any multiplicity)
std::vector<BPoly> distinct_irreducible_factors(const BPoly& g, const FieldPtr& fld,
                                                uint64_t seed) {
    std::vector<BPoly> out;
    if (bp_ydeg(g) < 1) return out;
    const Int p = fld->p;

    BPoly gy = bp_deriv_y(g);
    if (gy.empty()) {
        // every y-degree divisible by p
        bool all_x_divisible = true;
        for (const auto& xc : g)
            for (const auto& [e, c] : xc)
                if (e % (long)p != 0) all_x_divisible = false;
        if (all_x_divisible) {
            // perfect p-th power: detwist both exponents
            BPoly base((g.size() - 1) / (size_t)(long)p + 1);
            for (size_t k = 0; k < g.size(); ++k)
                for (const auto& [e, c] : g[k])
                    base[k / (size_t)(long)p].emplace(e / (long)p, ff_pth_root(c));
            return distinct_irreducible_factors(base, fld, seed);
        }
        // g = h(x, y^p) with h monic; factors of h substitute back
        BPoly h((g.size() - 1) / (size_t)(long)p + 1);
        for (size_t k = 0; k < g.size(); ++k)
            for (const auto& [e, c] : g[k]) h[k / (size_t)(long)p].emplace(e, c);
        std::vector<BPoly> sub = distinct_irreducible_factors(h, fld, seed);
        std::vector<BPoly> out2;
        for (const auto& hs : sub) {
            BPoly he((hs.size() - 1) * (size_t)(long)p + 1);
            for (size_t k = 0; k < hs.size(); ++k)
                for (const auto& [e, c] : hs[k]) he[k * (size_t)(long)p].emplace(e, c);
            bool xs_divisible = true;
            for (const auto& xc : hs)
                for (const auto& [e, c] : xc)
                    if (e % (long)p != 0) xs_divisible = false;
            if (!xs_divisible) {
                out2.push_back(std::move(he));  // irreducible: coefficients not all p-th powers
            } else {
                BPoly det(hs.size());
                for (size_t k = 0; k < hs.size(); ++k)
                    for (const auto& [e, c] : hs[k]) det[k].emplace(e / (long)p, ff_pth_root(c));
                for (auto& f : distinct_irreducible_factors(det, fld, seed))
                    out2.push_back(std::move(f));
            }
        }
        return out2;
    }

    BPoly c = bp_gcd(g, gy, fld);
    if (bp_ydeg(c) == 0) {
        SquarefreeFactorizer sf{fld, seed};
        return sf.run(g);
    }
    BPoly sqf;
    if (!bp_divmod_monic(g, c, sqf)) throw SchemaError("gcd does not divide");
    SquarefreeFactorizer sf{fld, seed};
    std::vector<BPoly> out2 = sf.run(sqf);
    for (auto& f : distinct_irreducible_factors(c, fld, seed)) {
        bool dup = false;
        for (const auto& o : out2) {
            if (o.size() != f.size()) continue;
            bool eq = true;
            for (size_t k = 0; k < f.size() && eq; ++k)
                if (!(o[k] == f[k])) eq = false;
            if (eq) dup = true;
        }
        if (!dup) out2.push_back(std::move(f));
    }
    return out2;
}

}  // namespace

BivariateFactorization factor_bivariate(const LaurentPoly& g, bool absolute, uint64_t seed) {
    if (g.d != 1) throw DimensionMismatch("factor_bivariate needs one torus variable");
    if (!lp_monic_in_y(g)) throw NotMonic("factor_bivariate input must be monic in y");
    const FieldPtr& fld = g.field;
    BPoly G = bp_from_lp(g);

    std::vector<BPoly> dist = distinct_irreducible_factors(G, fld, seed);
    // multiplicities by exact trial division
    BivariateFactorization out;
    BPoly rem = G;
    // canonical order: by y-degree, then by term data
    std::sort(dist.begin(), dist.end(), [&](const BPoly& a, const BPoly& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        auto key = [&](const BPoly& f) {
            std::string s;
            for (const auto& xc : f)
                for (const auto& [e, c] : xc) {
                    s += std::to_string(e) + ":";
                    for (auto w : c.coords) s += std::to_string(w) + ",";
                    s += ";";
                }
            return s;
        };
        return key(a) < key(b);
    });
    for (const auto& f : dist) {
        unsigned mult = 0;
        BPoly q;
        while (bp_ydeg(rem) >= bp_ydeg(f) && bp_divmod_monic(rem, f, q)) {
            rem = q;
            ++mult;
        }
        if (mult > 0) out.factors.push_back({bp_to_lp(f, fld), mult});
    }
    if (bp_ydeg(rem) != 0)
        throw SchemaError("factor_bivariate: factors do not exhaust the input");

    if (absolute) {
        out.absolute = true;
        for (const auto& bf : out.factors) {
            unsigned s = bf.factor.ydeg();
            if (s == 1) {
                out.absolute_splits.push_back(1);
                for (unsigned m = 0; m < bf.mult; ++m) out.absolute_degrees.push_back(1);
                continue;
            }
            // the orbit size e equals the factor count over F_{q^s}
            FieldPtr ext = extension_of(fld, s);
            Embedding emb = embed_field(fld, ext, seed);
            BPoly fe = SquarefreeFactorizer::embed_bp(bp_from_lp(bf.factor), emb);
            std::vector<BPoly> pieces = distinct_irreducible_factors(fe, ext, seed);
            unsigned e = (unsigned)pieces.size();
            out.absolute_splits.push_back(e);
            out.extension_degree = std::max(out.extension_degree, e);
            for (unsigned m = 0; m < bf.mult; ++m)
                for (unsigned i = 0; i < e; ++i) out.absolute_degrees.push_back(s / e);
        }
        std::sort(out.absolute_degrees.begin(), out.absolute_degrees.end());
    }
    return out;
}

// ---- torus polynomials in up to two variables --------------------------------

namespace {

void lp_spans(const LaurentPoly& f, std::vector<long>& lo, std::vector<long>& hi) {
    lo.assign(f.d, 0);
    hi.assign(f.d, 0);
    for (const auto& [k, c] : f.terms)
        for (unsigned i = 0; i < f.d; ++i) {
            long e = (long)k.first.num()[i];
            lo[i] = std::min(lo[i], e);
            hi[i] = std::max(hi[i], e);
        }
}

// fold (t1, t2) -> (x, x^B); exponent e -> e1 + B e2
LaurentPoly kronecker_fold(const LaurentPoly& f, long B) {
    LaurentPoly r = lp_make(f.field, 1);
    for (const auto& [k, c] : f.terms) {
        Int e = k.first.num()[0] + Int(B) * k.first.num()[1];
        lp_add_term(r, ExpVec({e}, 1), k.second, c);
    }
    return r;
}

// unfold an exponent into the window [lo1, lo1 + B)
LaurentPoly kronecker_unfold(const LaurentPoly& f, long B, long lo1, const FieldPtr& fld) {
    LaurentPoly r = lp_make(fld, 2);
    for (const auto& [k, c] : f.terms) {
        Int E = k.first.num()[0];
        Int a = E - lo1;
        Int m = a % B;
        if (m < 0) m += B;
        Int e1 = lo1 + m;
        Int e2 = (E - e1) / B;
        lp_add_term(r, ExpVec({e1, e2}, 1), k.second, c);
    }
    return r;
}

std::vector<LaurentPoly> factor_d2(const LaurentPoly& f, uint64_t seed) {
    std::vector<long> lo, hi;
    lp_spans(f, lo, hi);
    long B = hi[0] - lo[0] + 1;
    LaurentPoly img = kronecker_fold(f, B);
    BivariateFactorization bf = factor_bivariate(img, false, seed);
    // multiset of image factors
    std::vector<LaurentPoly> pieces;
    for (const auto& p : bf.factors)
        for (unsigned m = 0; m < p.mult; ++m) pieces.push_back(p.factor);

    std::vector<LaurentPoly> out;
    LaurentPoly rem = f;
    std::vector<size_t> pool(pieces.size());
    for (size_t i = 0; i < pool.size(); ++i) pool[i] = i;
    while (!pool.empty()) {
        bool split = false;
        for (size_t sz = 1; sz <= pool.size() && !split; ++sz) {
            std::vector<size_t> idx(sz);
            std::function<bool(size_t, size_t)> choose = [&](size_t from, size_t k) {
                if (k == sz) {
                    LaurentPoly prod = pieces[pool[idx[0]]];
                    for (size_t i = 1; i < sz; ++i) prod = lp_mul(prod, pieces[pool[idx[i]]]);
                    LaurentPoly cand = kronecker_unfold(prod, B, lo[0], f.field);
                    // verify: cand times the unfolded complement equals f
                    LaurentPoly cprod = lp_make(f.field, 1);
                    lp_add_term(cprod, ExpVec({Int(0)}, 1), 0, ff_one(f.field));
                    for (size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            cprod = lp_mul(cprod, pieces[pool[i]]);
                    LaurentPoly ccand = kronecker_unfold(cprod, B, lo[0], f.field);
                    if (!lp_equal(lp_mul(cand, ccand), rem)) return false;
                    out.push_back(cand);
                    rem = ccand;
                    std::vector<size_t> np;
                    for (size_t i = 0; i < pool.size(); ++i)
                        if (std::find(idx.begin(), idx.end(), i) == idx.end())
                            np.push_back(pool[i]);
                    pool = np;
                    return true;
                }
                for (size_t i = from; i < pool.size(); ++i) {
                    idx[k] = i;
                    if (choose(i + 1, k + 1)) return true;
                }
                return false;
            };
            split = choose(0, 0);
            if (sz == pool.size() && !split) {
                out.push_back(rem);  // remaining part is irreducible
                pool.clear();
            }
        }
    }
    return out;
}

LaurentPoly normalize_unit_lead(const LaurentPoly& f) {
    // scale by a unit so the top y-coefficient becomes the constant 1
    unsigned s = f.ydeg();
    const ExpVec* lead_exp = nullptr;
    const FFElem* lead_c = nullptr;
    unsigned count = 0;
    for (const auto& [k, c] : f.terms)
        if (k.second == s) {
            ++count;
            lead_exp = &k.first;
            lead_c = &c;
        }
    if (count != 1) throw NotMonic("leading y-coefficient is not a single monomial");
    LaurentPoly r = lp_shift(f, -*lead_exp);
    return lp_scale(r, ff_inv(*lead_c));
}

}  // namespace

std::vector<LaurentPoly> factor_torus_poly(const LaurentPoly& f, bool absolute, uint64_t seed) {
    LaurentPoly g = lp_monic_in_y(f) ? f : normalize_unit_lead(f);
    FieldPtr fld = g.field;
    if (absolute) {
        unsigned s = g.ydeg();
        FieldPtr ext = extension_of(fld, s);
        if (!ext->same(*fld)) {
            Embedding emb = embed_field(fld, ext, seed);
            g = lp_map_field(g, emb);
            fld = ext;
        }
    }
    if (g.d == 1) {
        BivariateFactorization bf = factor_bivariate(g, false, seed);
        std::vector<LaurentPoly> out;
        for (const auto& p : bf.factors)
            for (unsigned m = 0; m < p.mult; ++m) out.push_back(p.factor);
        return out;
    }
    if (g.d == 2) return factor_d2(g, seed);
    throw ResourceBound("factorization implemented for at most two torus variables");
}

bool absolutely_irreducible(const LaurentPoly& f, uint64_t seed) {
    LaurentPoly g = lp_monic_in_y(f) ? f : normalize_unit_lead(f);
    auto base = factor_torus_poly(g, false, seed);
    if (base.size() != 1) return false;
    return factor_torus_poly(g, true, seed).size() == 1;
}

std::optional<PBWitness> pb_falsify(const LaurentPoly& f, unsigned bound, uint64_t seed) {
    LaurentPoly g = lp_monic_in_y(f) ? f : normalize_unit_lead(f);
    if (g.d > 2) throw ResourceBound("pb_falsify implemented for at most two torus variables");
    if (factor_torus_poly(g, false, seed).size() != 1)
        throw HypothesisViolated("pb_falsify expects an irreducible input");
    if (g.ydeg() == 1) return std::nullopt;  // linear in y: every pullback stays irreducible

    std::vector<unsigned> m(g.d, 1);
    for (;;) {
        // next diagonal in lexicographic order
        int i = (int)g.d - 1;
        while (i >= 0 && m[i] == bound) m[i--] = 1;
        if (i < 0) break;
        ++m[i];
        IntMat A(g.d, std::vector<Int>(g.d, 0));
        for (unsigned j = 0; j < g.d; ++j) A[j][j] = m[j];
        LaurentPoly pb = pullback_isogeny(g, A);
        auto factors = factor_torus_poly(pb, false, seed);
        if (factors.size() > 1) return PBWitness{A, std::move(factors)};
        auto abs_factors = factor_torus_poly(pb, true, seed);
        if (abs_factors.size() > 1) return PBWitness{A, std::move(abs_factors)};
    }
    return std::nullopt;
}

// ---- the direction scan -------------------------------------------------------

ScanReport bertini_scan(const LaurentPoly& f, const Cone& cone, unsigned bound,
                        ThetaPolicy policy, unsigned theta_extension, uint64_t seed,
                        unsigned max_lattice_index) {
    if (!lp_monic_in_y(f)) throw NotMonic("bertini_scan input must be monic in y");
    if (cone.dim() != f.d) throw DimensionMismatch("bertini_scan cone");
    ScanReport rep;
    rep.policy = policy;
    rep.theta_extension = theta_extension;
    rep.seed = seed;

    FieldPtr fe = extension_of(f.field, theta_extension);
    LaurentPoly f_e = f;
    if (!fe->same(*f.field)) f_e = lp_map_field(f, embed_field(f.field, fe, seed));

    // theta tuples per policy
    std::vector<std::vector<FFElem>> thetas;
    if (policy == ThetaPolicy::ones) {
        thetas.push_back(std::vector<FFElem>(f.d, ff_one(fe)));
    } else if (policy == ThetaPolicy::exhaustive_small_field) {
        // all tuples over F_{q^ext}^*
        std::vector<FFElem> units;
        std::vector<uint32_t> coords(fe->k, 0);
        for (Int c = 0; c + 1 < fe->cardinality(); ++c) {
            unsigned i = 0;
            while (i < fe->k && ++coords[i] == fe->p) coords[i++] = 0;
            FFElem cand{fe, coords};
            if (!cand.is_zero()) units.push_back(cand);
        }
        std::vector<size_t> pick(f.d, 0);
        for (;;) {
            std::vector<FFElem> tuple;
            for (unsigned i = 0; i < f.d; ++i) tuple.push_back(units[pick[i]]);
            thetas.push_back(std::move(tuple));
            int i = (int)f.d - 1;
            while (i >= 0 && pick[i] + 1 == units.size()) pick[i--] = 0;
            if (i < 0) break;
            ++pick[i];
        }
    }

    std::mt19937_64 rng(seed);
    std::vector<std::vector<Int>> directions;
    std::vector<long> idx(f.d, 1);
    for (;;) {
        std::vector<Int> n(idx.begin(), idx.end());
        if (cone.contains(n, /*strict=*/true)) directions.push_back(n);
        int i = (int)f.d - 1;
        while (i >= 0 && idx[i] == (long)bound) idx[i--] = 1;
        if (i < 0) break;
        ++idx[i];
    }

    for (const auto& n : directions) {
        std::vector<std::vector<FFElem>> local = thetas;
        if (policy == ThetaPolicy::random_per_direction) {
            std::vector<FFElem> tuple;
            for (unsigned i = 0; i < f.d; ++i) {
                FFElem c = ff_zero(fe);
                while (c.is_zero()) {
                    std::vector<uint32_t> coords(fe->k);
                    for (auto& x : coords) x = (uint32_t)(rng() % fe->p);
                    c = FFElem{fe, coords};
                }
                tuple.push_back(c);
            }
            local.push_back(std::move(tuple));
        }
        DirectionReport dr;
        dr.n = n;
        dr.irreducible = true;
        dr.extension_degree = 1;
        dr.factor_degrees = {f.ydeg()};
        for (const auto& theta : local) {
            SubstSpec spec{n, theta};
            LaurentPoly gx = phi_laurent(f_e, spec);
            BivariateFactorization bf = factor_bivariate(gx, true, seed);
            if (!bf.absolutely_irreducible()) {
                dr.irreducible = false;
                if (bf.absolute_degrees.size() > dr.factor_degrees.size() ||
                    dr.factor_degrees == std::vector<unsigned>{f.ydeg()}) {
                    dr.factor_degrees = bf.absolute_degrees;
                    dr.extension_degree = bf.extension_degree;
                }
            } else {
                dr.extension_degree = std::max(dr.extension_degree, bf.extension_degree);
            }
        }
        if (!dr.irreducible) rep.bad.push_back(n);
        rep.per_direction.push_back(std::move(dr));
    }

    rep.fitted = fit_bad_lattices(rep.bad, f.d, max_lattice_index, &rep.uncovered);
    return rep;
}

std::vector<IntLattice> fit_bad_lattices(const std::vector<std::vector<Int>>& bad, unsigned d,
                                         unsigned max_index,
                                         std::vector<std::vector<Int>>* uncovered) {
    std::vector<IntLattice> candidates;
    for (unsigned idx = 2; idx <= max_index; ++idx)
        for (auto& l : sublattices_of_index(d, idx)) candidates.push_back(std::move(l));

    std::vector<std::vector<Int>> remaining = bad;
    std::vector<IntLattice> chosen;
    for (;;) {
        size_t best = candidates.size();
        size_t best_cover = 1;  // need at least two points to justify a lattice
        for (size_t i = 0; i < candidates.size(); ++i) {
            size_t cover = 0;
            for (const auto& n : remaining)
                if (candidates[i].contains(n)) ++cover;
            bool better = cover > best_cover ||
                          (best < candidates.size() && cover == best_cover &&
                           candidates[i].index() > candidates[best].index());
            if (better) {
                best = i;
                best_cover = cover;
            }
        }
        if (best == candidates.size()) break;
        chosen.push_back(candidates[best]);
        std::vector<std::vector<Int>> keep;
        for (auto& n : remaining)
            if (!candidates[best].contains(n)) keep.push_back(std::move(n));
        remaining = std::move(keep);
        if (remaining.empty()) break;
    }
    if (uncovered) *uncovered = remaining;
    return chosen;
}

}  // namespace gps
