#pragma once

// Exact integer linear algebra: Smith normal form, lattice quotients and
// membership, and the matrix-equation solvers behind automorphism discovery.

#include "solcrys/ints.hpp"

#include <optional>
#include <span>
#include <vector>

namespace solcrys {

// Small dense integer matrices of arbitrary shape, used for the rank<=4
// linear systems that enumeration needs. Row major.
namespace linsys {

using IMat = std::vector<std::vector<Int>>;
using IVec = std::vector<Int>;

struct SnfData {
  IMat u, uinv;  // unimodular row transform and its inverse: s = u*m*v
  IMat v, vinv;
  IVec diag;  // min(r,c) entries, non-negative, divisibility chain
  int rank = 0;
};

SnfData smith(const IMat& m);

// Basis of { x : m*x = 0 } as a list of columns.
std::vector<IVec> kernel_basis(const IMat& m);

// All integer solutions of m*x = b as x0 + span(kernel); nullopt if none.
struct AffineSolutions {
  IVec x0;
  std::vector<IVec> kernel;
};
std::optional<AffineSolutions> solve(const IMat& m, const IVec& b);

// All solutions of m*x = b with |x_i| <= bound for every coordinate.
std::vector<IVec> solve_in_box(const IMat& m, const IVec& b, const Int& bound);

// All lattice points x0 + sum t_j k_j with every |x_i| <= bound.
std::vector<IVec> points_in_box(const IVec& x0, const std::vector<IVec>& kernel,
                                const Int& bound);

}  // namespace linsys

// --- public operations ---------------------------------------------------

struct SnfResult {
  Mat2 u, s, v;  // u*s*v == input, u and v unimodular, s = diag(d1,d2),
                 // d1 >= 0 and d1 | d2 (with 0 treated as divisible by all)
};
SnfResult smith_normal_form(const Mat2& m);

// Z^2 (or a designated sublattice) modulo the span of `generators`.
//
// When `ambient` is given, its nonzero columns span the ambient sublattice;
// generators must lie inside it and the quotient is taken there. Reduction
// picks the lexicographically least non-negative representative in
// SNF-adapted coordinates, mapped back to standard coordinates.
struct AbelianQuotient {
  std::vector<Int> invariant_factors;  // factors > 1, each dividing the next
  int rank_deficiency = 0;             // number of infinite cyclic factors
  std::vector<Vec2> coset_reps;        // enumerated only when finite

  // reduction data
  int amb_rank = 2;
  std::vector<Vec2> amb_basis;  // amb_rank columns spanning the ambient
  linsys::IMat u, uinv;         // SNF transform on ambient coordinates
  std::vector<Int> diag;        // moduli in transformed coordinates (0 = free)

  bool finite() const { return rank_deficiency == 0; }
  Int order() const;                    // 0 when infinite
  bool in_ambient(const Vec2& x) const;
  Vec2 reduce(const Vec2& x) const;     // canonical representative of x's class
  bool contains(const Vec2& x) const;   // true iff x lies in span(generators)
};

AbelianQuotient lattice_quotient(std::span<const Vec2> generators,
                                 const std::optional<Mat2>& ambient = {});

bool lattice_membership(const Vec2& x, std::span<const Vec2> generators);

// All integer X with X*a = a^sign * X and entries bounded by `bound`,
// filtered to |det X| = 1. Complete within the bound: the linear conditions
// cut out a rank<=2 sublattice of Z^4 and only that sublattice is searched.
std::vector<Mat2> solve_intertwiner(const Mat2& a, int sign, const Int& bound);

// All integer N with N*N = a, via the Cayley-Hamilton parametrization
// N = +-(a + d*I)/s with d = det N in {+1,-1} and s^2 = tr a + 2d.
struct SquareRoot {
  Mat2 n;
  int det_n;  // +1 or -1
};
std::vector<SquareRoot> integral_square_roots(const Mat2& a);

// All traceless M within the entry bound with M*a*M^{-1} = a^{-1} and
// det M = want_det. Every sign -1 intertwiner of a hyperbolic matrix is
// traceless, so this is the det filter applied to solve_intertwiner.
std::vector<Mat2> reversing_matrices(const Mat2& a, int want_det, const Int& bound);

// Basis (0..2 vectors) of { x in Z^2 : m*x = 0 }, saturated.
std::vector<Vec2> kernel_vectors(const Mat2& m);

// Basis of the intersection of two sublattices of Z^2.
std::vector<Vec2> lattice_intersection(std::span<const Vec2> gens1,
                                       std::span<const Vec2> gens2);

}  // namespace solcrys
