#pragma once

#include <map>

#include "gps/series.hpp"

namespace gps {

/// Element of F_q[t_1^±, ..., t_d^±, y]: finitely many terms, integral
/// t-exponents.
struct LaurentPoly {
    FieldPtr field;
    unsigned d = 1;
    std::map<std::pair<ExpVec, unsigned>, FFElem> terms;  // (t-exponent, y-degree) -> coeff

    bool is_zero() const { return terms.empty(); }
    unsigned ydeg() const;
};

LaurentPoly lp_make(FieldPtr field, unsigned d);
void lp_add_term(LaurentPoly& f, const ExpVec& e, unsigned ydeg, const FFElem& c);
LaurentPoly lp_add(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_neg(const LaurentPoly& a);
LaurentPoly lp_mul(const LaurentPoly& a, const LaurentPoly& b);
LaurentPoly lp_scale(const LaurentPoly& a, const FFElem& c);
/// Multiplies by the monomial t^e (unit of the Laurent ring).
LaurentPoly lp_shift(const LaurentPoly& a, const ExpVec& e);
bool lp_equal(const LaurentPoly& a, const LaurentPoly& b);

/// True when the top y-coefficient is the constant monomial 1.
bool lp_monic_in_y(const LaurentPoly& f);
/// Leading y-coefficient as a one-term Laurent polynomial.
LaurentPoly lp_lead_ycoeff(const LaurentPoly& f);

/// y-coefficient as an exact series over the given order.
GPSeries lp_ycoeff_series(const LaurentPoly& f, unsigned k, const OrderPtr& order);
LaurentPoly lp_map_field(const LaurentPoly& f, const Embedding& emb);

/// Substitutes y by a series: sum of coeff_k(t) * s^k, exact up to s's cutoff.
GPSeries lp_eval_y(const LaurentPoly& f, const GPSeries& s);

/// t_i -> t^(column i of A); exponents transform linearly by A.
LaurentPoly lp_monomial_substitution(const LaurentPoly& f, const IntMat& a_columns);

}  // namespace gps
