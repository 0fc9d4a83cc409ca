#pragma once

#include <map>
#include <memory>
#include <optional>

#include "gps/ff.hpp"
#include "gps/support.hpp"

namespace gps {

using OrderPtr = std::shared_ptr<const WeightOrder>;

/// Truncated generalized power series: finite term map, exact on every
/// exponent with primary weight value below the cutoff.
struct GPSeries {
    FieldPtr field;
    OrderPtr order;
    Cutoff cutoff = Cutoff::inf();
    std::map<ExpVec, FFElem> terms;                 // nonzero coefficients only
    std::optional<StructuredSupport> model;          // full untruncated support, when known

    unsigned dim() const { return order->dim(); }
    bool no_terms() const { return terms.empty(); }
    bool exact_zero() const { return terms.empty() && !cutoff.finite; }
};

GPSeries gp_make(FieldPtr field, OrderPtr order, Cutoff cutoff = Cutoff::inf());
GPSeries gp_constant(FieldPtr field, OrderPtr order, const FFElem& c);
GPSeries gp_monomial(FieldPtr field, OrderPtr order, const ExpVec& e, const FFElem& c);

/// Accumulates c into the term at e, respecting the cutoff and dropping zeros.
void gp_add_term(GPSeries& f, const ExpVec& e, const FFElem& c);

/// Lower bound for the valuation usable in cutoff propagation:
/// min stored value, else the cutoff itself (infinite for exact zero).
Cutoff gp_val_lb(const GPSeries& f);

/// Exact valuation: min weight value over the support; nullopt encodes +inf
/// (exact zero).  Throws IndeterminateValuation when no term is stored but
/// the cutoff is finite.
std::optional<Rat> gp_valuation(const GPSeries& f);
std::pair<ExpVec, FFElem> gp_leading_term(const GPSeries& f);

GPSeries gp_add(const GPSeries& f, const GPSeries& g);
GPSeries gp_neg(const GPSeries& f);
GPSeries gp_sub(const GPSeries& f, const GPSeries& g);
GPSeries gp_scalar_mul(const GPSeries& f, const FFElem& c);
GPSeries gp_mul(const GPSeries& f, const GPSeries& g);
GPSeries gp_pow(const GPSeries& f, unsigned e);

/// Frobenius power f^p in characteristic p: termwise (p*a, c^p), exact.
GPSeries gp_frobenius_pow(const GPSeries& f);

/// Termwise p-th root: (a/p, pth_root(c)); inverse of gp_frobenius_pow.
GPSeries gp_pth_root(const GPSeries& f);

/// f = plus + minus with minus supported strictly below 0 in the order.
std::pair<GPSeries, GPSeries> gp_split_pm(const GPSeries& f);

/// Long division f/g for g with an invertible leading term, exact up to the
/// propagated cutoff.  Iteration-capped (ResourceBound).
GPSeries gp_div(const GPSeries& f, const GPSeries& g, size_t max_steps = 200000);

struct InKCResult {
    bool in;
    std::string reason;
    Cone sigma;  // the certified perturbation cone of the support
};

/// Membership in K_C: support certified, pure p-power denominators, and the
/// certificate's cone contains c.
InKCResult in_K_C(const GPSeries& f, const Cone& c);

/// Applies a coefficient-field embedding to every term.
GPSeries gp_map_field(const GPSeries& f, const Embedding& emb);

/// Scales every exponent by a positive rational (isogeny-style reparametrization).
StructuredSupport support_scale(const StructuredSupport& s, const Rat& c);

bool same_context(const GPSeries& f, const GPSeries& g);

}  // namespace gps
