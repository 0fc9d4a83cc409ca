#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "gps/order.hpp"

namespace gps {

/// Geometric p-family { l + p^{-j}(u - l) : j >= J }.  The members converge
/// to the limit l; under a certifying weight they increase strictly toward it.
struct PFamily {
    ExpVec limit;         // l
    ExpVec seed;          // u != l
    unsigned start_index;  // J

    ExpVec member(unsigned j, const Int& p) const;
    bool operator==(const PFamily& o) const {
        return limit == o.limit && seed == o.seed && start_index == o.start_index;
    }
};

/// Finite set plus finitely many p-families: the decidable fragment of
/// p-discrete supports.
struct StructuredSupport {
    Int p = 2;
    unsigned d = 1;
    std::vector<ExpVec> finite;
    std::vector<PFamily> families;

    bool contains(const ExpVec& x) const;
    bool empty() const { return finite.empty() && families.empty(); }
};

struct Violation {
    char condition;  // 'a', 'c', ...
    std::string message;
    std::vector<ExpVec> witness_points;
    std::vector<Rat> witness_values;
};

struct PDiscreteCertificate {
    Cone sigma;    // weights for which every family increases toward its limit
    bool refined;  // some sigma constraint is tight at w1 (stability holds for
                   // the lexicographic refinement w1 + eps*w2 + ...)
    ExpVec gamma;
    Cone cone_c;   // pointed, support inside gamma + cone_c, w1 in int(dual)
    Int big_n;     // prime-to-p denominator bound
    std::vector<ExpVec> limits;
};

using CheckResult = std::variant<PDiscreteCertificate, Violation>;

CheckResult pdiscrete_check(const StructuredSupport& s, const WeightOrder& order);
inline bool is_certified(const CheckResult& r) {
    return std::holds_alternative<PDiscreteCertificate>(r);
}

struct SplitResult {
    StructuredSupport plus, minus;  // strict sides; points equal to gamma' fall in neither
    Cone sigma;                     // weights on which this split is stable
    bool refined;
};

SplitResult split_at(const StructuredSupport& s, const ExpVec& gamma_prime,
                     const WeightOrder& order);

StructuredSupport support_union(const StructuredSupport& a, const StructuredSupport& b);
StructuredSupport support_translate(const StructuredSupport& s, const ExpVec& gamma);

/// Union of p^{-i}.s over i >= 0.  Requires every element strictly below 0 in
/// the order; finite points become families with limit 0.
StructuredSupport scale_p_inverse_union(const StructuredSupport& s, const WeightOrder& order);

struct SemigroupBelow {
    std::vector<ExpVec> elements;  // S(A) cut below gamma, sorted by the order
    unsigned bound_m;              // summand bound ceil(w.gamma / min positive value)
    Rat min_positive;
};

/// Exact enumeration of S(A) below gamma via the summand bound.
SemigroupBelow semigroup_below(const StructuredSupport& s, const ExpVec& gamma,
                               const WeightOrder& order);

}  // namespace gps
