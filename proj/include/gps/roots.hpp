#pragma once

#include "gps/laurent.hpp"

namespace gps {

struct BranchStep {
    ExpVec gamma;        // initial exponent chosen at this step
    FFElem coef;         // initial coefficient
    std::string method;  // "hensel" | "artin_schreier" | "newton_step"
};

struct RootExpansion {
    GPSeries root;
    Rat residual_valuation;     // proven: val(F(root)) >= this
    bool residual_exact_zero;   // no residual term was left at all
    std::vector<BranchStep> branch_log;
    FieldPtr extension_field;
    unsigned multiplicity = 1;
};

enum class HenselSchedule { newton, frozen_derivative };

/// Polynomial in y with series coefficients, constant term first.
using SeriesPoly = std::vector<GPSeries>;

GPSeries series_poly_eval(const SeriesPoly& f, const GPSeries& y);
SeriesPoly series_poly_derivative(const SeriesPoly& f);

/// Lifts a simple residue root to a series root with residual valuation at
/// least target.  Coefficients need valuation >= 0 and cutoffs >= target.
RootExpansion hensel_root(const SeriesPoly& f, const FFElem& residue_root, const Rat& target,
                          HenselSchedule schedule = HenselSchedule::newton);

/// Root of X^p - X - f, built as g + h: g by Hensel on the nonnegative part,
/// h by the explicit telescoping sum over the negative part.  depth bounds
/// the number of p-th root layers of h.
RootExpansion artin_schreier_root(const GPSeries& f, const Rat& target, unsigned depth = 64,
                                  uint64_t seed = 0);

struct PartialBranch {
    std::vector<BranchStep> prefix;
    unsigned multiplicity;
    std::string reason;
};

struct NewtonPuiseuxResult {
    std::vector<RootExpansion> roots;
    std::vector<PartialBranch> unresolved;
    bool complete() const { return unresolved.empty(); }
    Int common_den_prime_to_p = 1;  // the N of the isogeny rescaling
};

/// Expands all roots of a Laurent polynomial monic in y to the target cutoff.
/// Three step kinds only: simple-root Hensel finish, Artin-Schreier normal
/// form, separable Newton substitution; anything wilder lands in unresolved.
NewtonPuiseuxResult newton_puiseux(const LaurentPoly& f, const OrderPtr& order,
                                   const Rat& target_cutoff, unsigned max_steps = 20,
                                   unsigned as_depth = 64, uint64_t seed = 0);

}  // namespace gps
