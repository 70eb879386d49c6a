#pragma once

// Weyl-chamber simplices and unimodular tile covers of dilated simplices.

#include "unicover/geom.hpp"

#include <optional>
#include <vector>

namespace unicover {

/// conv(x_0, ..., x_d) with x_0 = translate and x_{i+1} = x_i + e_{sigma(i+1)}.
struct WeylSimplex {
  std::vector<std::size_t> sigma;  // a permutation of 0..d-1
  IntVector translate;

  std::vector<IntVector> vertices() const;
};

WeylSimplex weyl_simplex(std::vector<std::size_t> sigma, IntVector translate);

/// Squared Euclidean width (max a.x - min a.x)^2 / |a|^2 over the given points.
Rational directional_width_squared(std::span<const RatVector> points, const RatVector& a);

/// Permutation ordering the target/frame ratios |w_i|/|v_i| decreasingly;
/// ties keep the original index order. Throws DomainError when w_i is not a
/// positive multiple of v_i.
std::vector<std::size_t> reorder_by_ratio(std::span<const RatVector> frame, std::span<const RatVector> target);

/// The positive ratios lambda_i with w_i = lambda_i v_i.
std::vector<Rational> ray_ratios(std::span<const RatVector> frame, std::span<const RatVector> target);

/// A tile of a cover: a simplex unimodular for the frame lattice.
struct Tile {
  std::vector<IntVector> coefficients;  // per vertex, integer coordinates over the frame vertices
  std::vector<RatVector> vertices;      // per vertex, ambient point
};

struct TileCover {
  std::vector<RatVector> frame;       // frame vertices other than O, input order
  std::vector<RatVector> target;      // matching target vertices
  std::vector<std::size_t> order;     // ratio order used for the standard coordinates
  Rational scale;
  Rational epsilon;
  std::vector<Tile> tiles;
};

/// Refusal of a tile cover because c^2 eps^2 < dim; carries the minimal admissible integer c.
class ScaleTooSmall : public PreconditionError {
 public:
  ScaleTooSmall(const std::string& what, Integer minimal) : PreconditionError(what), minimal_(std::move(minimal)) {}
  const Integer& minimal_scale() const { return minimal_; }

 private:
  Integer minimal_;
};

/// Frame = conv(O, frame[i]), target = conv(O, target[i]) with target[i] on the
/// ray of frame[i]. Returns every translate of every Weyl simplex (in the frame
/// lattice, frame mapped to conv(O, e1, e1+e2, ...) after ratio reordering)
/// that lies in c * target. Requires c^2 eps^2 >= number of frame vertices.
TileCover tile_cover(std::span<const RatVector> frame, std::span<const RatVector> target, const Rational& epsilon,
                     const Rational& c);

/// Smallest integer c with c^2 eps^2 >= dim.
Integer minimal_tile_scale(std::size_t dim, const Rational& epsilon);

/// In frame-standard coordinates after reordering, the hyperplane through the
/// target vertices is sum alpha_i X_i = 1 with alpha_1 = 1/lambda_1,
/// alpha_i = 1/lambda_i - 1/lambda_{i-1}. Checks alpha >= 0 and that its
/// distance from O is at least lambda_min.
bool distance_lemma_holds(const std::vector<Rational>& sorted_ratios);

}  // namespace unicover
