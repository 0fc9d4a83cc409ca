#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "gps/errors.hpp"
#include "gps/numeric.hpp"

namespace gps {

class Field;
using FieldPtr = std::shared_ptr<const Field>;

/// F_{p^k} presented as F_p[x]/(modulus).  Immutable after construction.
class Field {
public:
    uint32_t p;
    unsigned k;
    std::vector<uint32_t> modulus;  // length k+1, monic, constant-first

    /// Verifies primality and irreducibility; searches for a modulus when none
    /// is given (smallest monic irreducible in lexicographic coefficient order).
    static FieldPtr make(uint32_t p, unsigned k,
                         std::optional<std::vector<uint32_t>> modulus = std::nullopt);

    Int cardinality() const { return pow_int(Int(p), k); }
    bool same(const Field& o) const { return p == o.p && k == o.k && modulus == o.modulus; }

private:
    Field(uint32_t p_, unsigned k_, std::vector<uint32_t> m)
        : p(p_), k(k_), modulus(std::move(m)) {}
};

/// Element of a Field: length-k coordinate vector over F_p, constant-first.
struct FFElem {
    FieldPtr field;
    std::vector<uint32_t> coords;

    bool is_zero() const;
    bool operator==(const FFElem& o) const { return coords == o.coords && field->same(*o.field); }
    bool operator!=(const FFElem& o) const { return !(*this == o); }
};

FFElem ff_zero(const FieldPtr& f);
FFElem ff_one(const FieldPtr& f);
FFElem ff_from_int(const FieldPtr& f, Int n);
/// The class of x, a root of the modulus (equals the integer image for k = 1... not defined there; requires k >= 2).
FFElem ff_gen(const FieldPtr& f);

FFElem ff_add(const FFElem& a, const FFElem& b);
FFElem ff_sub(const FFElem& a, const FFElem& b);
FFElem ff_neg(const FFElem& a);
FFElem ff_mul(const FFElem& a, const FFElem& b);
FFElem ff_inv(const FFElem& a);
FFElem ff_pow(const FFElem& a, Int e);  // negative e inverts first

/// Unique b with b^p = a (inverse Frobenius, a^{p^{k-1}}).
FFElem ff_pth_root(const FFElem& a);

/// Deterministic total order on elements of one field (coordinate lex).
bool ff_less(const FFElem& a, const FFElem& b);

/// Dense univariate polynomial over a Field, coefficients flat (k words each,
/// constant term first), no trailing zero coefficients.
class FqPoly {
public:
    explicit FqPoly(FieldPtr f) : field_(std::move(f)) {}
    FqPoly(FieldPtr f, const std::vector<FFElem>& coeffs);

    const FieldPtr& field() const { return field_; }
    long deg() const { return (long)ncoeffs() - 1; }  // -1 for the zero polynomial
    bool is_zero() const { return flat_.empty(); }
    size_t ncoeffs() const { return field_->k == 0 ? 0 : flat_.size() / field_->k; }

    FFElem coeff(size_t i) const;           // 0 beyond the degree
    void set_coeff(size_t i, const FFElem& c);
    FFElem lead() const;
    void trim();

    static FqPoly zero(const FieldPtr& f) { return FqPoly(f); }
    static FqPoly one(const FieldPtr& f);
    static FqPoly x(const FieldPtr& f);
    static FqPoly constant(const FFElem& c);

    friend FqPoly operator+(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator-(const FqPoly& a, const FqPoly& b);
    friend FqPoly operator*(const FqPoly& a, const FqPoly& b);
    FqPoly operator-() const;
    bool operator==(const FqPoly& o) const { return flat_ == o.flat_ && field_->same(*o.field_); }

    const std::vector<uint32_t>& flat() const { return flat_; }
    std::vector<uint32_t>& flat_mut() { return flat_; }

private:
    FieldPtr field_;
    std::vector<uint32_t> flat_;
};

FqPoly poly_scale(const FqPoly& a, const FFElem& c);
void poly_divmod(const FqPoly& a, const FqPoly& b, FqPoly& q, FqPoly& r);
FqPoly poly_mod(const FqPoly& a, const FqPoly& m);
FqPoly poly_gcd(FqPoly a, FqPoly b);  // monic result
FqPoly poly_derivative(const FqPoly& a);
FqPoly poly_powmod(const FqPoly& base, Int e, const FqPoly& m);
FFElem poly_eval(const FqPoly& a, const FFElem& x);
FqPoly poly_make_monic(const FqPoly& a);
/// Inverse of a modulo m (they must be coprime).
FqPoly poly_invmod(const FqPoly& a, const FqPoly& m);

bool is_prime_u32(uint32_t n);
bool poly_is_irreducible(const FqPoly& f);

struct FactorUnit {
    FqPoly factor;    // monic irreducible
    unsigned mult;
};

/// One root together with the smallest extension it was found in.
struct RootInExtension {
    FFElem value;          // element of `field`
    FieldPtr field;        // F_{p^{k*m}} for minimal m
    unsigned ext_degree;   // m, relative to the input field
    unsigned mult;
};

struct FactorResult {
    FFElem lead;                       // leading unit
    std::vector<FactorUnit> factors;   // sorted by (degree, coefficient lex)
    std::vector<RootInExtension> roots;  // populated when allow_extension
};

/// Squarefree split + distinct-degree + equal-degree splitting (seeded).
/// With allow_extension, every factor is chased into the minimal extension
/// containing its roots and all roots are reported.
FactorResult factor_univariate(const FqPoly& f, bool allow_extension = false,
                               uint64_t seed = 0);

/// Maps src into dst (src->k must divide dst->k, same p): the generator of src
/// goes to the lexicographically least root of src's modulus in dst.
struct Embedding {
    FieldPtr src, dst;
    FFElem gen_image;
    FFElem apply(const FFElem& a) const;
};

Embedding embed_field(const FieldPtr& src, const FieldPtr& dst, uint64_t seed = 0);

/// Solves emb.apply(u) = v for u when v lies in the embedded subfield.
std::optional<FFElem> embedding_preimage(const Embedding& emb, const FFElem& v);

/// F_{p^{k*m}} for the given base field.
FieldPtr extension_of(const FieldPtr& base, unsigned m);

/// Frobenius x -> x^(p^i), used to merge conjugate factor orbits.
FFElem ff_frobenius(const FFElem& a, unsigned i);

}  // namespace gps
