#pragma once

#include <vector>

#include "gps/errors.hpp"
#include "gps/numeric.hpp"

namespace gps {

/// Point of Q^d stored as num/den in lowest terms, den > 0.  Denominators of
/// the form N*p^j arise automatically; p_part() recovers (N, j).
class ExpVec {
public:
    ExpVec() = default;
    ExpVec(std::vector<Int> num, Int den);
    static ExpVec zero(unsigned d);
    static ExpVec from_ints(std::vector<Int> v) { return ExpVec(std::move(v), 1); }
    static ExpVec from_rats(const std::vector<Rat>& v);

    unsigned dim() const { return (unsigned)num_.size(); }
    const std::vector<Int>& num() const { return num_; }
    const Int& den() const { return den_; }
    Rat coord(size_t i) const { return Rat(num_[i], den_); }
    std::vector<Rat> coords() const;
    bool is_zero() const;
    bool is_integral() const { return den_ == 1; }
    std::pair<Int, unsigned> den_p_part(const Int& p) const { return p_part(den_, p); }

    friend ExpVec operator+(const ExpVec& a, const ExpVec& b);
    friend ExpVec operator-(const ExpVec& a, const ExpVec& b);
    ExpVec operator-() const;
    ExpVec scaled(const Rat& c) const;

    bool operator==(const ExpVec& o) const { return den_ == o.den_ && num_ == o.num_; }
    bool operator!=(const ExpVec& o) const { return !(*this == o); }
    /// Structural order (for map keys); unrelated to any weight order.
    bool operator<(const ExpVec& o) const;

private:
    std::vector<Int> num_;
    Int den_ = 1;
};

Rat dot(const std::vector<Rat>& w, const ExpVec& a);
Rat dot(const std::vector<Int>& n, const ExpVec& a);
Rat dot(const std::vector<Rat>& w, const std::vector<Rat>& x);

enum class Cmp { LT, EQ, GT };

/// Total group order on Q^d: compare by row 1 of a full-rank rational matrix,
/// break ties with the following rows.  Simulates an irrational weight
/// w1 + eps*w2 + eps^2*w3 + ... for infinitesimal eps.
class WeightOrder {
public:
    explicit WeightOrder(std::vector<std::vector<Rat>> rows);
    static WeightOrder identity(unsigned d);

    unsigned dim() const { return (unsigned)rows_.size(); }
    const std::vector<Rat>& row(size_t i) const { return rows_[i]; }
    const std::vector<std::vector<Rat>>& rows() const { return rows_; }

    Rat value(const ExpVec& a) const { return dot(rows_[0], a); }  // primary weight
    Cmp compare(const ExpVec& a, const ExpVec& b) const;
    bool less(const ExpVec& a, const ExpVec& b) const { return compare(a, b) == Cmp::LT; }
    bool row1_positive() const;  // strictly positive first row (scan precondition)

private:
    std::vector<std::vector<Rat>> rows_;
};

/// Rational polyhedral cone with both descriptions kept in sync:
///   V: primitive integer rays + lineality basis
///   H: halfspaces {x : h.x >= 0} + equations {x : e.x = 0}
class Cone {
public:
    static Cone from_generators(unsigned d, std::vector<std::vector<Int>> rays,
                                std::vector<std::vector<Int>> lines = {});
    static Cone from_halfspaces(unsigned d, std::vector<std::vector<Int>> halfspaces,
                                std::vector<std::vector<Int>> equations = {});
    static Cone full_space(unsigned d) { return from_halfspaces(d, {}); }
    static Cone orthant(unsigned d);

    unsigned dim() const { return d_; }
    const std::vector<std::vector<Int>>& rays() const { return rays_; }
    const std::vector<std::vector<Int>>& lines() const { return lines_; }
    const std::vector<std::vector<Int>>& halfspaces() const { return half_; }
    const std::vector<std::vector<Int>>& equations() const { return eq_; }

    Cone dual() const;
    bool is_pointed() const { return lines_.empty(); }
    bool is_fulldim() const;
    unsigned span_dim() const;
    bool is_trivial() const { return rays_.empty() && lines_.empty(); }

    bool contains(const std::vector<Rat>& x, bool strict = false) const;
    bool contains(const std::vector<Int>& x, bool strict = false) const;
    bool subset_of(const Cone& other) const;
    bool same_cone(const Cone& other) const { return subset_of(other) && other.subset_of(*this); }

    friend Cone intersect(const Cone& a, const Cone& b);
    friend Cone minkowski_sum(const Cone& a, const Cone& b);

private:
    unsigned d_ = 0;
    std::vector<std::vector<Int>> rays_, lines_;  // V-description
    std::vector<std::vector<Int>> half_, eq_;     // H-description
};

// ---- exact integer / rational linear algebra --------------------------------

using IntMat = std::vector<std::vector<Int>>;

struct SNFResult {
    IntMat U, D, V;  // U*M*V = D, U and V unimodular, d1 | d2 | ...
};

SNFResult snf(const IntMat& M);

Int det_int(const IntMat& M);              // Bareiss, exact
unsigned rank_rat(std::vector<std::vector<Rat>> M);
IntMat mat_mul(const IntMat& A, const IntMat& B);
std::vector<Int> primitive(std::vector<Int> v);
std::vector<Int> clear_denominators(const std::vector<Rat>& v);  // primitive direction

/// Full-rank sublattice of Z^d given by column generators.
class IntLattice {
public:
    IntLattice(unsigned d, IntMat basis_columns);
    unsigned dim() const { return d_; }
    const IntMat& basis() const { return cols_; }
    const Int& index() const { return index_; }
    bool contains(const std::vector<Int>& n) const;

private:
    unsigned d_;
    IntMat cols_;
    Int index_;
    IntMat u_;               // from SNF of the basis matrix
    std::vector<Int> diag_;
};

/// H = {n in Z^d : n.v in Z}; index equals the reduced denominator of v.
IntLattice lattice_of_integrality(const ExpVec& v);

/// First point of int(c) in [-bound,bound]^d avoiding every lattice, scanning
/// shells of increasing infinity-norm, lexicographic within a shell.
std::vector<Int> pick_outside_lattices(const Cone& c, const std::vector<IntLattice>& lattices,
                                       unsigned bound);

/// Enumerates all full-rank sublattices of Z^d of the given index
/// (column-style Hermite normal forms), deterministic order.
std::vector<IntLattice> sublattices_of_index(unsigned d, const Int& index);

}  // namespace gps
