#pragma once

#include <variant>

#include "gps/laurent.hpp"

namespace gps {

/// The substitution t_i -> theta_i x^{n_i}.
struct SubstSpec {
    std::vector<Int> n;          // nonzero integer direction
    std::vector<FFElem> theta;   // nonzero scalars

    void validate(unsigned d, const FieldPtr& field) const;
};

struct PhiResult {
    GPSeries image;               // univariate in x (d = 1, order [[1]])
    bool exactness_certified;     // cutoff of the image is provably exact
    std::string warning;          // set in raw (uncertified) mode
};

/// phi on a series: sum c_u theta^u x^{n.u}.  Exponent denominators must be
/// pure p-powers (theta^u via iterated unique p-th roots).  With a certified
/// support model the fibers are checked exactly and the image cutoff is
/// computed from the certificate's cone; without one, collisions are counted
/// on stored terms with a threshold.
PhiResult phi_series(const GPSeries& f, const SubstSpec& spec,
                     unsigned collision_threshold = 16);

/// phi on a Laurent polynomial: F_q[t^±, y] -> F_q[x^±, y].
LaurentPoly phi_laurent(const LaurentPoly& f, const SubstSpec& spec);

struct NonIntegerExponent {
    ExpVec v;       // support point with n.v not integral, alone in its fiber
    IntLattice h;   // {m : m.v integral}; the direction n avoids h
};

struct UnboundedSupportCone {
    Cone cprime;
};

struct IsPossiblyPolynomial {};

using SubstWitness = std::variant<IsPossiblyPolynomial, NonIntegerExponent, UnboundedSupportCone>;

/// Obstruction to phi(alpha) being a Laurent polynomial.  Searches the
/// certified support for a fiber-isolated point with non-integral image
/// exponent; the witness lattice can be forced to have index >= min_index.
/// When the support search fails and the monomials of a vanishing polynomial
/// are supplied, falls back to the unbounded-support cone construction.
SubstWitness nonpolynomial_witness(
    const GPSeries& alpha, const SubstSpec& spec, const Int& min_index = 1,
    const std::vector<std::pair<ExpVec, unsigned>>& vanishing_monomials = {},
    unsigned family_search_depth = 32);

/// The cone of directions in which the top x-degree of the image of the
/// vanishing polynomial is achieved by one fixed pair of monomials.
Cone unbounded_support_cone(const std::vector<std::pair<ExpVec, unsigned>>& monomials,
                            const WeightOrder& order);

/// t_i -> t^(column i of A) with det A != 0; exponents transform by A.
LaurentPoly pullback_isogeny(const LaurentPoly& f, const IntMat& a_columns);

}  // namespace gps
