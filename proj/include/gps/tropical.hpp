#pragma once

#include "gps/series.hpp"

namespace gps {

/// Min-plus data of a hypersurface: exponent -> coefficient valuation.
struct ValuedPoly {
    unsigned n = 1;
    std::map<std::vector<Int>, Rat> terms;
};

ValuedPoly valued_poly_from_series(unsigned n,
                                   const std::vector<std::pair<std::vector<Int>, GPSeries>>& terms);

/// Rational polyhedron in V-description.
struct Polyhedron {
    std::vector<std::vector<Rat>> vertices;
    std::vector<std::vector<Int>> rays;
    std::vector<std::vector<Int>> lines;
    long dim = -1;  // affine dimension, -1 = empty

    bool empty() const { return vertices.empty(); }
    std::vector<Rat> relint_point() const;
};

/// Solves {x : eq.x = eqb, ineq.x >= inb} exactly (homogenization + double
/// description).
Polyhedron solve_affine(unsigned n, const std::vector<std::vector<Rat>>& eq,
                        const std::vector<Rat>& eqb, const std::vector<std::vector<Rat>>& ineq,
                        const std::vector<Rat>& inb);

struct TropCell {
    Polyhedron poly;
    std::vector<size_t> argmin;  // term indices achieving the minimum on the cell
    Int multiplicity = 1;        // lattice length, for top-dimensional cells
};

struct PolyhedralComplex {
    unsigned n = 1;
    std::vector<TropCell> cells;
    std::vector<size_t> facets;                          // indices of top cells
    std::vector<std::pair<size_t, size_t>> adjacency;    // facet pairs sharing a ridge
    long dim = -1;
    unsigned lineality_dim = 0;
    bool pure = true;
};

/// The min-attained-twice locus, cell by cell from the dual regular
/// subdivision; multiplicities are lattice lengths of the dual edges.
PolyhedralComplex trop_hypersurface(const ValuedPoly& f, unsigned max_terms = 16);

struct TransverseResult {
    PolyhedralComplex complex;  // the intersection with induced cells
    bool transverse;
};

/// Intersection with the affine hyperplane {normal.x = offset}: transverse
/// when every met cell drops dimension by exactly one and none lies inside.
TransverseResult transverse_intersect(const PolyhedralComplex& sigma,
                                      const std::vector<Rat>& normal, const Rat& offset);

/// True when removing any k-1 closed facets leaves the facet-ridge graph
/// connected.  Exhaustive over subsets; refuses beyond the stated bounds.
bool connectivity_through_codim1(const PolyhedralComplex& sigma, unsigned k,
                                 unsigned max_facets = 24, unsigned max_k = 3);

}  // namespace gps
