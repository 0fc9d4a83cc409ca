#include "gps/ff.hpp"

#include <algorithm>
#include <cassert>
#include <random>

#include "gps/kernels/modp.hpp"

namespace gps {

namespace {

// ---- prime-field scalar helpers -------------------------------------------

uint32_t sc_add(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + b;
    return s >= p ? s - p : s;
}
uint32_t sc_sub(uint32_t a, uint32_t b, uint32_t p) {
    uint32_t s = a + p - b;
    return s >= p ? s - p : s;
}
uint32_t sc_mul(uint32_t a, uint32_t b, uint32_t p) { return (a * b) % p; }

uint32_t sc_inv(uint32_t a, uint32_t p) {
    // extended Euclid on integers
    int64_t t = 0, newt = 1, r = p, newr = a % p;
    while (newr != 0) {
        int64_t q = r / newr;
        std::swap(t -= q * newt, newt);
        std::swap(r -= q * newr, newr);
    }
    assert(r == 1 && "sc_inv of non-unit");
    return (uint32_t)((t % p + p) % p);
}

// ---- raw F_p[x] helpers (for modulus reduction and element inversion) -----

using PVec = std::vector<uint32_t>;  // constant-first, trimmed

void pf_trim(PVec& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

PVec pf_mul(const PVec& a, const PVec& b, uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PVec r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        kernels::ops().axpy(r.data() + i, b.data(), a[i], b.size(), p);
    }
    pf_trim(r);
    return r;
}

void pf_divmod(const PVec& a, const PVec& b, PVec& q, PVec& r, uint32_t p) {
    assert(!b.empty());
    r = a;
    pf_trim(r);
    q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
    uint32_t lead_inv = sc_inv(b.back(), p);
    while (r.size() >= b.size()) {
        uint32_t c = sc_mul(r.back(), lead_inv, p);
        size_t shift = r.size() - b.size();
        if (c != 0) {
            q[shift] = c;
            uint32_t negc = p - c == p ? 0 : p - c;
            kernels::ops().axpy(r.data() + shift, b.data(), negc, b.size(), p);
        }
        r.pop_back();
        pf_trim(r);
        if (r.size() < b.size()) break;
    }
    pf_trim(q);
}

// Bezout: g = gcd(a,b) monic, with u*a ≡ g (mod b).
PVec pf_invmod(const PVec& a, const PVec& m, uint32_t p) {
    PVec r0 = m, r1 = a, t0 = {}, t1 = {1};
    pf_trim(r1);
    while (!r1.empty()) {
        PVec q, rem;
        pf_divmod(r0, r1, q, rem, p);
        PVec t2 = t0;  // t0 - q*t1
        PVec qt = pf_mul(q, t1, p);
        if (t2.size() < qt.size()) t2.resize(qt.size(), 0);
        for (size_t i = 0; i < qt.size(); ++i) t2[i] = sc_sub(t2[i], qt[i], p);
        pf_trim(t2);
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    assert(r0.size() == 1 && "pf_invmod: not coprime");
    uint32_t s = sc_inv(r0[0], p);
    for (auto& c : t0) c = sc_mul(c, s, p);
    // reduce mod m
    PVec q, rem;
    pf_divmod(t0, m, q, rem, p);
    return rem;
}

// ---- element arithmetic on raw coordinate vectors --------------------------

PVec elem_mul_raw(const Field& f, const PVec& a, const PVec& b) {
    const uint32_t p = f.p;
    const unsigned k = f.k;
    if (k == 1) return {sc_mul(a[0], b[0], p)};
    std::vector<uint64_t> acc(2 * k - 1, 0);
    for (unsigned i = 0; i < k; ++i) {
        if (a[i] == 0) continue;
        for (unsigned j = 0; j < k; ++j) acc[i + j] += (uint64_t)a[i] * b[j];
    }
    PVec buf(2 * k - 1);
    for (size_t i = 0; i < buf.size(); ++i) buf[i] = (uint32_t)(acc[i] % p);
    // reduce by the monic modulus from the top
    for (size_t i = buf.size(); i-- > k;) {
        uint32_t c = buf[i];
        if (c == 0) continue;
        buf[i] = 0;
        uint32_t negc = p - c;
        for (unsigned j = 0; j < k; ++j)
            buf[i - k + j] = (buf[i - k + j] + negc * f.modulus[j]) % p;
    }
    buf.resize(k);
    return buf;
}

}  // namespace

// ---- Field ------------------------------------------------------------------

bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; (uint64_t)d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

FieldPtr Field::make(uint32_t p, unsigned k, std::optional<std::vector<uint32_t>> modulus) {
    if (!is_prime_u32(p)) throw NotPrime("p = " + std::to_string(p));
    if (p > kernels::kMaxKernelPrime)
        throw ResourceBound("characteristic must be < 2^15 in this build");
    if (k < 1) throw SchemaError("extension degree must be >= 1");

    auto build = [&](std::vector<uint32_t> m) {
        return FieldPtr(new Field(p, k, std::move(m)));
    };

    if (modulus) {
        auto m = *modulus;
        if (m.size() != k + 1) throw SchemaError("modulus degree must equal k");
        for (auto& c : m) c %= p;
        if (m.back() != 1) throw SchemaError("modulus must be monic");
        if (k >= 2) {
            auto fp = FieldPtr(new Field(p, 1, {0, 1}));
            FqPoly mp(fp);
            for (size_t i = 0; i < m.size(); ++i)
                mp.set_coeff(i, FFElem{fp, {m[i]}});
            if (!poly_is_irreducible(mp))
                throw ReducibleModulus("modulus is reducible over F_" + std::to_string(p));
        }
        return build(std::move(m));
    }

    if (k == 1) return build({0, 1});

    auto fp = FieldPtr(new Field(p, 1, {0, 1}));
    std::vector<uint32_t> tail(k, 0);  // (c_0,...,c_{k-1}), lexicographic scan
    for (;;) {
        FqPoly cand(fp);
        for (unsigned i = 0; i < k; ++i) cand.set_coeff(i, FFElem{fp, {tail[i]}});
        cand.set_coeff(k, FFElem{fp, {1}});
        if (poly_is_irreducible(cand)) {
            std::vector<uint32_t> m = tail;
            m.push_back(1);
            return build(std::move(m));
        }
        // next tuple in lexicographic order: rightmost coordinate fastest
        int i = (int)k - 1;
        while (i >= 0 && tail[i] == p - 1) tail[i--] = 0;
        if (i < 0) throw NotFound("no irreducible modulus found");  // unreachable
        ++tail[i];
    }
}

// ---- FFElem -----------------------------------------------------------------

bool FFElem::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](uint32_t c) { return c == 0; });
}

FFElem ff_zero(const FieldPtr& f) { return {f, PVec(f->k, 0)}; }

FFElem ff_one(const FieldPtr& f) {
    PVec c(f->k, 0);
    c[0] = 1;
    return {f, c};
}

FFElem ff_from_int(const FieldPtr& f, Int n) {
    Int m = n % f->p;
    if (m < 0) m += f->p;
    PVec c(f->k, 0);
    c[0] = (uint32_t)m;
    return {f, c};
}

FFElem ff_gen(const FieldPtr& f) {
    if (f->k < 2) throw SchemaError("generator requires an extension field");
    PVec c(f->k, 0);
    c[1] = 1;
    return {f, c};
}

static void check_same_field(const FFElem& a, const FFElem& b) {
    if (!a.field->same(*b.field)) throw IncompatibleContexts("field mismatch");
}

FFElem ff_add(const FFElem& a, const FFElem& b) {
    check_same_field(a, b);
    PVec c(a.field->k);
    kernels::ops().add(c.data(), a.coords.data(), b.coords.data(), c.size(), a.field->p);
    return {a.field, c};
}

FFElem ff_sub(const FFElem& a, const FFElem& b) {
    check_same_field(a, b);
    PVec c(a.field->k);
    kernels::ops().sub(c.data(), a.coords.data(), b.coords.data(), c.size(), a.field->p);
    return {a.field, c};
}

FFElem ff_neg(const FFElem& a) {
    PVec c(a.coords);
    for (auto& x : c) x = x == 0 ? 0 : a.field->p - x;
    return {a.field, c};
}

FFElem ff_mul(const FFElem& a, const FFElem& b) {
    check_same_field(a, b);
    return {a.field, elem_mul_raw(*a.field, a.coords, b.coords)};
}

FFElem ff_inv(const FFElem& a) {
    if (a.is_zero()) throw SchemaError("inverse of zero");
    const auto& f = *a.field;
    if (f.k == 1) return {a.field, {sc_inv(a.coords[0], f.p)}};
    PVec ap = a.coords;
    pf_trim(ap);
    PVec m(f.modulus.begin(), f.modulus.end());
    PVec r = pf_invmod(ap, m, f.p);
    r.resize(f.k, 0);
    return {a.field, r};
}

FFElem ff_pow(const FFElem& a, Int e) {
    FFElem base = a;
    if (e < 0) {
        base = ff_inv(a);
        e = -e;
    }
    FFElem r = ff_one(a.field);
    while (e > 0) {
        if (e % 2 == 1) r = ff_mul(r, base);
        base = ff_mul(base, base);
        e /= 2;
    }
    return r;
}

FFElem ff_pth_root(const FFElem& a) {
    // Frobenius is bijective; its inverse is x -> x^{p^{k-1}}.
    return ff_pow(a, pow_int(Int(a.field->p), a.field->k - 1));
}

FFElem ff_frobenius(const FFElem& a, unsigned i) {
    return ff_pow(a, pow_int(Int(a.field->p), i % a.field->k));
}

bool ff_less(const FFElem& a, const FFElem& b) { return a.coords < b.coords; }

// ---- FqPoly -----------------------------------------------------------------

FqPoly::FqPoly(FieldPtr f, const std::vector<FFElem>& coeffs) : field_(std::move(f)) {
    for (size_t i = 0; i < coeffs.size(); ++i) set_coeff(i, coeffs[i]);
}

FFElem FqPoly::coeff(size_t i) const {
    const unsigned k = field_->k;
    if (i >= ncoeffs()) return ff_zero(field_);
    return {field_, PVec(flat_.begin() + i * k, flat_.begin() + (i + 1) * k)};
}

void FqPoly::set_coeff(size_t i, const FFElem& c) {
    const unsigned k = field_->k;
    if (!c.field->same(*field_)) throw IncompatibleContexts("coefficient field mismatch");
    if (i >= ncoeffs()) {
        if (c.is_zero()) return;
        flat_.resize((i + 1) * k, 0);
    }
    std::copy(c.coords.begin(), c.coords.end(), flat_.begin() + i * k);
    trim();
}

FFElem FqPoly::lead() const {
    if (is_zero()) return ff_zero(field_);
    return coeff(ncoeffs() - 1);
}

void FqPoly::trim() {
    const unsigned k = field_->k;
    while (!flat_.empty()) {
        bool allz = true;
        for (unsigned j = 0; j < k; ++j)
            if (flat_[flat_.size() - k + j] != 0) { allz = false; break; }
        if (!allz) break;
        flat_.resize(flat_.size() - k);
    }
}

FqPoly FqPoly::one(const FieldPtr& f) { return constant(ff_one(f)); }

FqPoly FqPoly::x(const FieldPtr& f) {
    FqPoly r(f);
    r.set_coeff(1, ff_one(f));
    return r;
}

FqPoly FqPoly::constant(const FFElem& c) {
    FqPoly r(c.field);
    r.set_coeff(0, c);
    return r;
}

FqPoly operator+(const FqPoly& a, const FqPoly& b) {
    FqPoly r(a.field_);
    r.flat_ = a.flat_;
    if (r.flat_.size() < b.flat_.size()) r.flat_.resize(b.flat_.size(), 0);
    kernels::ops().add(r.flat_.data(), r.flat_.data(), b.flat_.data(), b.flat_.size(),
                       a.field_->p);
    r.trim();
    return r;
}

FqPoly operator-(const FqPoly& a, const FqPoly& b) {
    FqPoly r(a.field_);
    r.flat_ = a.flat_;
    if (r.flat_.size() < b.flat_.size()) r.flat_.resize(b.flat_.size(), 0);
    kernels::ops().sub(r.flat_.data(), r.flat_.data(), b.flat_.data(), b.flat_.size(),
                       a.field_->p);
    r.trim();
    return r;
}

FqPoly FqPoly::operator-() const {
    FqPoly r(field_);
    r.flat_.assign(flat_.size(), 0);
    kernels::ops().sub(r.flat_.data(), r.flat_.data(), flat_.data(), flat_.size(), field_->p);
    r.trim();
    return r;
}

FqPoly operator*(const FqPoly& a, const FqPoly& b) {
    const auto& f = a.field_;
    if (a.is_zero() || b.is_zero()) return FqPoly::zero(f);
    const unsigned k = f->k;
    FqPoly r(f);
    if (k == 1) {
        // packed fast path: one axpy row per coefficient of a
        r.flat_.assign(a.flat_.size() + b.flat_.size() - 1, 0);
        for (size_t i = 0; i < a.flat_.size(); ++i) {
            if (a.flat_[i] == 0) continue;
            kernels::ops().axpy(r.flat_.data() + i, b.flat_.data(), a.flat_[i],
                                b.flat_.size(), f->p);
        }
    } else {
        size_t na = a.ncoeffs(), nb = b.ncoeffs();
        std::vector<FFElem> acc(na + nb - 1, ff_zero(f));
        for (size_t i = 0; i < na; ++i) {
            FFElem ai = a.coeff(i);
            if (ai.is_zero()) continue;
            for (size_t j = 0; j < nb; ++j) {
                FFElem bj = b.coeff(j);
                if (bj.is_zero()) continue;
                acc[i + j] = ff_add(acc[i + j], ff_mul(ai, bj));
            }
        }
        r = FqPoly(f, acc);
    }
    r.trim();
    return r;
}

FqPoly poly_scale(const FqPoly& a, const FFElem& c) {
    if (c.is_zero()) return FqPoly::zero(a.field());
    if (a.field()->k == 1) {
        FqPoly r(a.field());
        r.flat_mut().assign(a.flat().size(), 0);
        kernels::ops().scale(r.flat_mut().data(), a.flat().data(), c.coords[0],
                             a.flat().size(), a.field()->p);
        r.trim();
        return r;
    }
    FqPoly r(a.field());
    for (size_t i = 0; i < a.ncoeffs(); ++i) r.set_coeff(i, ff_mul(a.coeff(i), c));
    return r;
}

void poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r) {
    if (b.is_zero()) throw ZeroPolynomial("division by zero polynomial");
    q = FqPoly::zero(a.field());
    r = a;
    if (r.deg() < b.deg()) return;
    FFElem lead_inv = ff_inv(b.lead());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        size_t shift = (size_t)(r.deg() - b.deg());
        FFElem c = ff_mul(r.coeff((size_t)r.deg()), lead_inv);
        q.set_coeff(shift, c);
        // r -= c * x^shift * b
        for (size_t j = 0; j < b.ncoeffs(); ++j)
            r.set_coeff(shift + j, ff_sub(r.coeff(shift + j), ff_mul(c, b.coeff(j))));
    }
}

FqPoly poly_mod(const FqPoly& a, const FqPoly& m) {
    FqPoly q(a.field()), r(a.field());
    poly_divmod(a, m, q, r);
    return r;
}

FqPoly poly_make_monic(const FqPoly& a) {
    if (a.is_zero()) return a;
    return poly_scale(a, ff_inv(a.lead()));
}

FqPoly poly_gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return poly_make_monic(a);
}

FqPoly poly_derivative(const FqPoly& a) {
    FqPoly r(a.field());
    for (size_t i = 1; i < a.ncoeffs(); ++i)
        r.set_coeff(i - 1, ff_mul(a.coeff(i), ff_from_int(a.field(), Int(i))));
    return r;
}

FqPoly poly_powmod(const FqPoly& base, Int e, const FqPoly& m) {
    FqPoly b = poly_mod(base, m);
    FqPoly r = FqPoly::one(base.field());
    while (e > 0) {
        if (e % 2 == 1) r = poly_mod(r * b, m);
        e /= 2;
        if (e > 0) b = poly_mod(b * b, m);
    }
    return r;
}

FFElem poly_eval(const FqPoly& a, const FFElem& x) {
    FFElem r = ff_zero(a.field());
    for (size_t i = a.ncoeffs(); i-- > 0;) r = ff_add(ff_mul(r, x), a.coeff(i));
    return r;
}

FqPoly poly_invmod(const FqPoly& a, const FqPoly& m) {
    // extended Euclid over F_q[x]
    FqPoly r0 = m, r1 = poly_mod(a, m);
    FqPoly t0 = FqPoly::zero(a.field()), t1 = FqPoly::one(a.field());
    while (!r1.is_zero()) {
        FqPoly q(a.field()), rem(a.field());
        poly_divmod(r0, r1, q, rem);
        FqPoly t2 = t0 - q * t1;
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    if (r0.deg() != 0) throw SchemaError("poly_invmod: arguments not coprime");
    return poly_mod(poly_scale(t0, ff_inv(r0.coeff(0))), m);
}

std::optional<FFElem> embedding_preimage(const Embedding& emb, const FFElem& v) {
    // solve the F_p-linear system: coordinates of emb(gen^i) form the columns
    const unsigned ks = emb.src->k, kd = emb.dst->k;
    const uint32_t p = emb.src->p;
    std::vector<std::vector<uint32_t>> cols;
    FFElem gi = ff_one(emb.dst);
    for (unsigned i = 0; i < ks; ++i) {
        cols.push_back(gi.coords);
        gi = ff_mul(gi, emb.gen_image);
    }
    // Gaussian elimination on the kd x (ks+1) system over F_p
    std::vector<std::vector<uint32_t>> m(kd, std::vector<uint32_t>(ks + 1, 0));
    for (unsigned r = 0; r < kd; ++r) {
        for (unsigned c = 0; c < ks; ++c) m[r][c] = cols[c][r];
        m[r][ks] = v.coords[r];
    }
    std::vector<int> pivot_col(kd, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < ks && rank < kd; ++c) {
        unsigned piv = rank;
        while (piv < kd && m[piv][c] == 0) ++piv;
        if (piv == kd) continue;
        std::swap(m[piv], m[rank]);
        uint32_t inv = sc_inv(m[rank][c], p);
        for (unsigned j = 0; j <= ks; ++j) m[rank][j] = sc_mul(m[rank][j], inv, p);
        for (unsigned r = 0; r < kd; ++r) {
            if (r == rank || m[r][c] == 0) continue;
            uint32_t f = m[r][c];
            for (unsigned j = 0; j <= ks; ++j)
                m[r][j] = sc_sub(m[r][j], sc_mul(f, m[rank][j], p), p);
        }
        pivot_col[rank] = (int)c;
        ++rank;
    }
    for (unsigned r = rank; r < kd; ++r)
        if (m[r][ks] != 0) return std::nullopt;  // v is not in the subfield
    std::vector<uint32_t> u(ks, 0);
    for (unsigned r = 0; r < rank; ++r)
        if (pivot_col[r] >= 0) u[(unsigned)pivot_col[r]] = m[r][ks];
    FFElem out{emb.src, u};
    return emb.apply(out) == v ? std::optional<FFElem>(out) : std::nullopt;
}

bool poly_is_irreducible(const FqPoly& f0) {
    if (f0.deg() < 1) return false;
    FqPoly f = poly_make_monic(f0);
    unsigned n = (unsigned)f.deg();
    if (n == 1) return true;
    Int q = f.field()->cardinality();
    FqPoly x = FqPoly::x(f.field());
    // x^{q^n} == x mod f
    FqPoly h = x;
    for (unsigned i = 0; i < n; ++i) h = poly_powmod(h, q, f);
    if (!(poly_mod(h - x, f).is_zero())) return false;
    // gcd(x^{q^{n/l}} - x, f) == 1 for every prime l | n
    for (unsigned l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_u32(l)) continue;
        FqPoly g = x;
        for (unsigned i = 0; i < n / l; ++i) g = poly_powmod(g, q, f);
        if (poly_gcd(g - x, f).deg() > 0) return false;
    }
    return true;
}

// ---- factorization ----------------------------------------------------------

namespace {

FqPoly poly_pth_root(const FqPoly& f) {
    // f(x) = g(x^p) with g = sum pth_root(a_i) x^i
    const uint32_t p = f.field()->p;
    FqPoly g(f.field());
    for (size_t i = 0; i < f.ncoeffs(); ++i) {
        FFElem c = f.coeff(i);
        if (c.is_zero()) continue;
        assert(i % p == 0 && "poly_pth_root: exponent not divisible by p");
        g.set_coeff(i / p, ff_pth_root(c));
    }
    return g;
}

void squarefree_split(const FqPoly& f, unsigned mult,
                      std::vector<std::pair<FqPoly, unsigned>>& out) {
    const uint32_t p = f.field()->p;
    FqPoly fd = poly_derivative(f);
    if (fd.is_zero()) {
        squarefree_split(poly_make_monic(poly_pth_root(f)), mult * p, out);
        return;
    }
    FqPoly c = poly_gcd(f, fd);
    FqPoly w(f.field()), rem(f.field());
    poly_divmod(f, c, w, rem);
    unsigned i = 1;
    while (w.deg() > 0) {
        FqPoly y = poly_gcd(w, c);
        FqPoly z(f.field());
        poly_divmod(w, y, z, rem);
        if (z.deg() > 0) out.push_back({poly_make_monic(z), mult * i});
        FqPoly cn(f.field());
        poly_divmod(c, y, cn, rem);
        c = std::move(cn);
        w = std::move(y);
        ++i;
    }
    if (c.deg() > 0) squarefree_split(poly_make_monic(poly_pth_root(c)), mult * p, out);
}

// distinct-degree: list of (product of irreducibles of degree d, d)
std::vector<std::pair<FqPoly, unsigned>> ddf(const FqPoly& f) {
    std::vector<std::pair<FqPoly, unsigned>> out;
    Int q = f.field()->cardinality();
    FqPoly x = FqPoly::x(f.field());
    FqPoly fstar = f;
    FqPoly h = x;
    for (unsigned d = 1; fstar.deg() >= 2 * (long)d; ++d) {
        h = poly_powmod(h, q, fstar);
        FqPoly g = poly_gcd(h - x, fstar);
        if (g.deg() > 0) {
            out.push_back({g, d});
            FqPoly fn(f.field()), rem(f.field());
            poly_divmod(fstar, g, fn, rem);
            fstar = std::move(fn);
            h = poly_mod(h, fstar);
        }
    }
    if (fstar.deg() > 0) out.push_back({fstar, (unsigned)fstar.deg()});
    return out;
}

FqPoly random_poly(const FieldPtr& f, long max_deg, std::mt19937_64& rng) {
    FqPoly r(f);
    for (long i = 0; i < max_deg; ++i) {
        PVec c(f->k);
        for (auto& x : c) x = (uint32_t)(rng() % f->p);
        r.set_coeff((size_t)i, FFElem{f, c});
    }
    return r;
}

// Cantor-Zassenhaus equal-degree splitting
void edf(const FqPoly& f, unsigned d, std::mt19937_64& rng, std::vector<FqPoly>& out) {
    if (f.deg() <= 0) return;
    if ((unsigned)f.deg() == d) {
        out.push_back(poly_make_monic(f));
        return;
    }
    const auto& fld = f.field();
    Int q = fld->cardinality();
    for (;;) {
        FqPoly r = random_poly(fld, f.deg(), rng);
        if (r.is_zero()) continue;
        FqPoly g(fld);
        if (fld->p == 2) {
            // trace map over F_2: T(r) = sum_{i<k*d} r^{2^i}
            FqPoly t = poly_mod(r, f);
            FqPoly acc = t;
            unsigned steps = fld->k * d;
            for (unsigned i = 1; i < steps; ++i) {
                t = poly_mod(t * t, f);
                acc = acc + t;
            }
            g = poly_gcd(acc, f);
        } else {
            Int e = (pow_int(q, d) - 1) / 2;
            FqPoly t = poly_powmod(r, e, f);
            g = poly_gcd(t - FqPoly::one(fld), f);
        }
        if (g.deg() > 0 && g.deg() < f.deg()) {
            FqPoly h(fld), rem(fld);
            poly_divmod(f, g, h, rem);
            edf(g, d, rng, out);
            edf(poly_make_monic(h), d, rng, out);
            return;
        }
    }
}

bool factor_less(const FactorUnit& a, const FactorUnit& b) {
    if (a.factor.deg() != b.factor.deg()) return a.factor.deg() < b.factor.deg();
    return a.factor.flat() < b.factor.flat();
}

}  // namespace

FieldPtr extension_of(const FieldPtr& base, unsigned m) {
    if (m <= 1) return base;
    return Field::make(base->p, base->k * m);
}

Embedding embed_field(const FieldPtr& src, const FieldPtr& dst, uint64_t seed) {
    if (src->p != dst->p || dst->k % src->k != 0)
        throw IncompatibleContexts("no embedding between these fields");
    if (src->k == 1) return {src, dst, ff_zero(dst)};
    if (src->same(*dst)) return {src, dst, ff_gen(dst)};
    // roots of src's modulus in dst; take the least for determinism
    FqPoly m(dst);
    for (size_t i = 0; i < src->modulus.size(); ++i)
        m.set_coeff(i, ff_from_int(dst, Int(src->modulus[i])));
    FactorResult fr = factor_univariate(m, false, seed);
    std::optional<FFElem> best;
    for (const auto& fu : fr.factors) {
        if (fu.factor.deg() != 1) continue;
        FFElem root = ff_neg(fu.factor.coeff(0));  // monic x + c
        if (!best || ff_less(root, *best)) best = root;
    }
    if (!best) throw IncompatibleContexts("modulus has no root in target field");
    return {src, dst, *best};
}

FFElem Embedding::apply(const FFElem& a) const {
    FFElem r = ff_zero(dst);
    for (size_t i = a.coords.size(); i-- > 0;)
        r = ff_add(ff_mul(r, gen_image), ff_from_int(dst, Int(a.coords[i])));
    return r;
}

FactorResult factor_univariate(const FqPoly& f, bool allow_extension, uint64_t seed) {
    if (f.is_zero()) throw ZeroPolynomial("factor_univariate of 0");
    FactorResult res;
    res.lead = f.lead();
    if (f.deg() == 0) return res;
    FqPoly fm = poly_make_monic(f);

    std::vector<std::pair<FqPoly, unsigned>> sq;
    squarefree_split(fm, 1, sq);
    std::mt19937_64 rng(seed);
    for (auto& [part, mult] : sq) {
        for (auto& [prod, d] : ddf(part)) {
            std::vector<FqPoly> irr;
            edf(prod, d, rng, irr);
            for (auto& g : irr) res.factors.push_back({g, mult});
        }
    }
    std::sort(res.factors.begin(), res.factors.end(), factor_less);

    if (allow_extension) {
        for (const auto& fu : res.factors) {
            unsigned d = (unsigned)fu.factor.deg();
            if (d == 1) {
                res.roots.push_back({ff_neg(fu.factor.coeff(0)), f.field(), 1, fu.mult});
                continue;
            }
            FieldPtr ext = extension_of(f.field(), d);
            Embedding emb = embed_field(f.field(), ext, seed);
            FqPoly fe(ext);
            for (size_t i = 0; i < fu.factor.ncoeffs(); ++i)
                fe.set_coeff(i, emb.apply(fu.factor.coeff(i)));
            FactorResult sub = factor_univariate(fe, false, seed);
            std::vector<FFElem> roots;
            for (const auto& lf : sub.factors) {
                assert(lf.factor.deg() == 1 && "factor must split in F_{q^d}");
                roots.push_back(ff_neg(lf.factor.coeff(0)));
            }
            std::sort(roots.begin(), roots.end(), ff_less);
            for (auto& r : roots) res.roots.push_back({r, ext, d, fu.mult});
        }
    }
    return res;
}

}  // namespace gps
