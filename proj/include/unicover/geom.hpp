#pragma once

// Cones, lattice simplices, lattice polytopes, affine lattices and the exact
// predicates on them.

#include "unicover/exactmath.hpp"

#include <optional>
#include <span>
#include <vector>

namespace unicover {

/// Thrown when a documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Pointed rational cone, stored by its primitive extreme generators in
/// lexicographic order.
class Cone {
 public:
  /// Canonicalizes: primitivizes, drops duplicate rays and non-extreme
  /// generators, sorts. Throws DomainError for zero or non-pointed input.
  Cone(std::size_t dim, std::vector<IntVector> generators);

  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  std::size_t rank() const { return rank_; }
  bool full_dimensional() const { return rank_ == dim_; }
  bool simplicial() const { return rank_ == generators_.size(); }

  bool contains(const RatVector& x) const;

  friend bool operator==(const Cone&, const Cone&) = default;

 private:
  std::size_t dim_;
  std::size_t rank_;
  std::vector<IntVector> generators_;
};

/// Full-dimensional simplicial cone with primitive generators. The generator
/// matrix inverse is cached as an integer adjugate.
class SimplicialCone {
 public:
  /// Generators are primitivized; with canonical_order they are also sorted.
  /// Throws DomainError when they are not dim-many linearly independent vectors.
  explicit SimplicialCone(std::vector<IntVector> generators, bool canonical_order = true);

  std::size_t dim() const { return generators_.size(); }
  const std::vector<IntVector>& generators() const { return generators_; }
  const IntVector& generator(std::size_t i) const { return generators_[i]; }
  /// Signed determinant of the matrix with the generators as columns.
  const Integer& determinant() const { return det_; }
  Integer multiplicity() const { return abs(det_); }
  bool unimodular() const { return det_ == 1 || det_ == -1; }

  /// x = sum_i xi_i * g_i.
  RatVector coefficients(const RatVector& x) const;
  RatVector coefficients(const IntVector& x) const;
  /// det * xi, integral for integral x.
  IntVector scaled_coefficients(const IntVector& x) const;
  /// Sum of the coefficients; the height functional that is 1 on every generator.
  Rational height(const RatVector& x) const;
  bool contains(const RatVector& x) const;
  bool contains(const IntVector& x) const;

  /// Generators sorted lexicographically; equality of cones as sets.
  std::vector<IntVector> sorted_generators() const;
  Cone as_cone() const;

  /// Same generator set.
  friend bool operator==(const SimplicialCone& a, const SimplicialCone& b) {
    return a.sorted_generators() == b.sorted_generators();
  }

 private:
  std::vector<IntVector> generators_;
  Integer det_;
  IntMatrix adjugate_;  // adjugate_ * G = det_ * I
};

/// Simplex with exact rational vertices (lexicographically sorted), possibly
/// lower-dimensional in its ambient space.
class LatticeSimplex {
 public:
  explicit LatticeSimplex(std::vector<RatVector> vertices);
  static LatticeSimplex from_integer(std::span<const IntVector> vertices);

  std::size_t ambient_dim() const { return vertices_.front().size(); }
  std::size_t dim() const { return vertices_.size() - 1; }
  const std::vector<RatVector>& vertices() const { return vertices_; }
  bool is_lattice() const;
  std::vector<IntVector> integer_vertices() const;

  /// Barycentric coordinates when p lies in the affine hull.
  std::optional<RatVector> barycentric(const RatVector& p) const;
  /// Membership in scale * simplex (dilation about the origin); boundary counts.
  bool contains(const RatVector& p, const Rational& scale = Rational(1)) const;

  friend bool operator==(const LatticeSimplex&, const LatticeSimplex&) = default;

 private:
  std::vector<RatVector> vertices_;
};

/// Lattice polytope given by its vertices (exactly the extreme points, sorted).
class LatticePolytope {
 public:
  LatticePolytope(std::size_t dim, std::vector<IntVector> points);

  std::size_t ambient_dim() const { return dim_; }
  const std::vector<IntVector>& vertices() const { return vertices_; }
  bool full_dimensional() const;

  friend bool operator==(const LatticePolytope&, const LatticePolytope&) = default;

 private:
  std::size_t dim_;
  std::vector<IntVector> vertices_;
};

/// origin + sum Z * basis_i.
class AffineLattice {
 public:
  AffineLattice(RatVector origin, std::vector<RatVector> basis);
  /// The lattice L_S spanned by a simplex: first vertex plus edge differences.
  static AffineLattice of_simplex(const LatticeSimplex& s);

  const RatVector& origin() const { return origin_; }
  const std::vector<RatVector>& basis() const { return basis_; }
  std::size_t rank() const { return basis_.size(); }

  bool contains(const RatVector& p) const;
  bool same_as(const AffineLattice& other) const;

 private:
  RatVector origin_;
  std::vector<RatVector> basis_;
};

// ---- operations --------------------------------------------------------------

/// One primitive vector per edge ray, lexicographic. Throws DomainError when
/// the generated cone is not pointed or a generator is zero.
std::vector<IntVector> extreme_generators(std::span<const IntVector> generators);
std::vector<IntVector> extreme_generators(const Cone& c);

/// conv(O, extreme generators).
LatticeSimplex base_simplex(const SimplicialCone& c);

/// Order of the torsion subgroup of Z^n modulo the edge lattice.
Integer simplex_multiplicity(const LatticeSimplex& s);

/// All lattice points of a lattice simplex (sorted).
std::vector<IntVector> lattice_points(const LatticeSimplex& s);
bool is_empty_simplex(const LatticeSimplex& s);

bool contains_point(const Cone& c, const RatVector& p);
/// p in scale * s.
bool contains_point(const LatticeSimplex& s, const Rational& scale, const RatVector& p);

/// Lattice points sum xi_i g_i with all xi_i in [0,1). Count equals |det|.
std::vector<IntVector> lattice_points_in_box(std::span<const IntVector> generators);

struct BoxPoint {
  IntVector point;
  RatVector coefficients;  // in [0,1)
};
std::vector<BoxPoint> box_points_with_coefficients(std::span<const IntVector> generators);

/// Nonnegative coefficients over the generators representing x, if x lies in
/// their cone.
std::optional<RatVector> nonnegative_representation(std::span<const IntVector> generators,
                                                    const RatVector& x);

/// min { sum lambda : x = sum lambda_i g_i, lambda >= 0 }, i.e. the smallest
/// factor f with x in f * conv(O, generators). Empty when x is outside the cone.
std::optional<Rational> min_height(std::span<const IntVector> generators, const RatVector& x);

/// Calls visit(indices) for every k-subset of [0, n) in lexicographic order;
/// stops early when visit returns false.
template <typename Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  if (k > n) return;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  while (true) {
    if (!visit(static_cast<const std::vector<std::size_t>&>(idx))) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Integer normal of the hyperplane spanned by n-1 vectors in R^n
/// (generalized cross product; zero when they are dependent).
IntVector hyperplane_normal(std::span<const IntVector> vectors);

}  // namespace unicover
