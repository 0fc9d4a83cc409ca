#pragma once

#include <optional>

#include "gps/subst.hpp"

namespace gps {

struct BivariateFactor {
    LaurentPoly factor;  // monic in y
    unsigned mult;
};

struct BivariateFactorization {
    std::vector<BivariateFactor> factors;     // over the input field
    // absolute data (filled when requested)
    bool absolute = false;
    std::vector<unsigned> absolute_splits;    // how many conjugate pieces each factor has
    std::vector<unsigned> absolute_degrees;   // y-degrees of the absolute factors, with mult
    unsigned extension_degree = 1;            // largest extension consulted

    unsigned factor_count_with_mult() const {
        unsigned n = 0;
        for (const auto& f : factors) n += f.mult;
        return n;
    }
    unsigned absolute_count() const {
        unsigned n = 0;
        for (size_t i = 0; i < factors.size(); ++i)
            n += factors[i].mult * (absolute ? absolute_splits[i] : 1);
        return n;
    }
    bool absolutely_irreducible() const { return absolute && absolute_count() == 1; }
};

/// Factorization of g in F_q[x^±, y], monic in y: specialize at a point with
/// squarefree fiber, factor there, Hensel-lift in x - xi, recombine subsets,
/// verify by exact multiplication.  With absolute set, each factor is chased
/// through extensions of degree up to its y-degree.
BivariateFactorization factor_bivariate(const LaurentPoly& g, bool absolute = false,
                                        uint64_t seed = 0);

/// Absolute irreducibility of f in up to two torus variables (d = 2 reduces
/// to the bivariate case by an injective monomial substitution).
bool absolutely_irreducible(const LaurentPoly& f, uint64_t seed = 0);

/// Full factorization for d <= 2, monic in y (d = 2 via Kronecker substitution
/// with support-window lifting and exact verification).
std::vector<LaurentPoly> factor_torus_poly(const LaurentPoly& f, bool absolute, uint64_t seed = 0);

struct PBWitness {
    IntMat isogeny;                     // diagonal matrix columns
    std::vector<LaurentPoly> factors;   // a nontrivial factorization of the pullback
};

/// Scans diagonal isogenies with entries up to bound for one whose pullback
/// is (absolutely) reducible.  nullopt means "not falsified up to the bound".
std::optional<PBWitness> pb_falsify(const LaurentPoly& f, unsigned bound, uint64_t seed = 0);

enum class ThetaPolicy { ones, random_per_direction, exhaustive_small_field };

struct DirectionReport {
    std::vector<Int> n;
    bool irreducible;                       // absolutely, for every sampled theta
    std::vector<unsigned> factor_degrees;   // of the worst (most split) theta
    unsigned extension_degree;
};

struct ScanReport {
    std::vector<DirectionReport> per_direction;  // sorted by n
    std::vector<std::vector<Int>> bad;
    std::vector<IntLattice> fitted;
    std::vector<std::vector<Int>> uncovered;
    ThetaPolicy policy;
    unsigned theta_extension = 1;  // field extension the thetas range over
    uint64_t seed = 0;
};

/// Theorem-4.5-style scan: every direction in the cone's interior inside
/// [1..bound]^d, every theta per policy; absolute irreducibility of the image.
ScanReport bertini_scan(const LaurentPoly& f, const Cone& cone, unsigned bound,
                        ThetaPolicy policy, unsigned theta_extension = 1, uint64_t seed = 0,
                        unsigned max_lattice_index = 8);

/// Greedy cover of the bad set by sublattices of index >= 2 (largest coverage
/// first, then largest index, then HNF order); singletons stay uncovered.
std::vector<IntLattice> fit_bad_lattices(const std::vector<std::vector<Int>>& bad, unsigned d,
                                         unsigned max_index, std::vector<std::vector<Int>>* uncovered);

}  // namespace gps
