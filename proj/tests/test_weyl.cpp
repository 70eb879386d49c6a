#include "doctest.h"
#include "support.hpp"
#include "unicover/weyl.hpp"

#include <algorithm>

using namespace unicover;
using namespace testing;

namespace {

std::vector<RatVector> rvs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<RatVector> out;
  for (auto r : rows) out.push_back(rv(r));
  return out;
}

// Tile is unimodular for the frame lattice: integer frame coordinates whose
// edge vectors have determinant +-1.
bool unimodular_in_frame(const Tile& t) {
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < t.coefficients.size(); ++i) edges.push_back(t.coefficients[i] - t.coefficients[0]);
  return abs(integer_determinant(IntMatrix::from_rows(edges))) == 1;
}

}  // namespace

TEST_CASE("weyl simplex examples") {
  const auto id = weyl_simplex({0, 1, 2}, iv({0, 0, 0}));
  CHECK(id.vertices() == ivs({{0, 0, 0}, {1, 0, 0}, {1, 1, 0}, {1, 1, 1}}));
  const auto swapped = weyl_simplex({1, 0}, iv({0, 0}));
  CHECK(swapped.vertices() == ivs({{0, 0}, {0, 1}, {1, 1}}));
  const auto shifted = weyl_simplex({2, 0, 1}, iv({3, -1, 2}));
  CHECK(simplex_multiplicity(LatticeSimplex::from_integer(shifted.vertices())) == 1);
  CHECK_THROWS_AS(weyl_simplex({0, 0}, iv({0, 0})), DomainError);
}

TEST_CASE("directional width examples") {
  const auto cube = rvs({{0, 0}, {1, 0}, {0, 1}, {1, 1}});
  CHECK(directional_width_squared(cube, rv({1, 0})) == 1);
  const auto seg = rvs({{0, 0}, {3, 0}});
  CHECK(directional_width_squared(seg, rv({1, 0})) == 9);
  CHECK_THROWS_AS(directional_width_squared(seg, rv({0, 0})), DomainError);
}

TEST_CASE("property: weyl simplices have width at most sqrt d") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::size_t> sigma{0, 1, 2};
    std::shuffle(sigma.begin(), sigma.end(), rng);
    std::vector<RatVector> pts;
    for (const auto& v : weyl_simplex(sigma, random_vector(rng, 3, -5, 5)).vertices()) pts.push_back(to_rational(v));
    const RatVector a = to_rational(random_vector(rng, 3, -7, 7));
    if (is_zero(a)) continue;
    CHECK(directional_width_squared(pts, a) <= 3);
  }
}

TEST_CASE("reorder by ratio") {
  CHECK(reorder_by_ratio(rvs({{1, 0}, {0, 1}}), rvs({{3, 0}, {0, 2}})) == std::vector<std::size_t>{0, 1});
  CHECK(reorder_by_ratio(rvs({{1, 0}, {0, 1}}), rvs({{2, 0}, {0, 5}})) == std::vector<std::size_t>{1, 0});
  CHECK(reorder_by_ratio(rvs({{1, 0}, {0, 1}}), rvs({{2, 0}, {0, 2}})) == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(reorder_by_ratio(rvs({{1, 0}, {0, 1}}), rvs({{2, 1}, {0, 2}})), DomainError);
}

TEST_CASE("tile cover of the standard simplex triangulates it") {
  const auto frame = rvs({{1, 0}, {1, 1}});
  const auto cover = tile_cover(frame, frame, q(1, 2), q(3));
  // 3 * conv(O, e1, e1+e2) has normalized area 9
  CHECK(cover.tiles.size() == 9);
  for (const auto& t : cover.tiles) CHECK(unimodular_in_frame(t));
}

TEST_CASE("tile cover in dimension one") {
  const auto frame = rvs({{1}});
  const auto cover = tile_cover(frame, frame, q(1, 2), q(2));
  REQUIRE(cover.tiles.size() == 2);
  CHECK(cover.tiles[0].vertices == rvs({{0}, {1}}));
  CHECK(cover.tiles[1].vertices == rvs({{1}, {2}}));
}

TEST_CASE("tile cover refuses small scales") {
  const auto frame = rvs({{1, 0}, {1, 1}});
  try {
    tile_cover(frame, frame, q(1, 2), q(2));
    FAIL("expected refusal");
  } catch (const ScaleTooSmall& e) {
    CHECK(e.minimal_scale() == 3);
  }
  CHECK(minimal_tile_scale(3, q(1, 3)) == 6);
}

TEST_CASE("property: tiles lie in the dilated target") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(uniform(rng, 2, 3));
    const auto gens = random_basis(rng, d, -3, 3);
    std::vector<RatVector> frame, target;
    for (const auto& g : gens) {
      frame.push_back(to_rational(g));
      target.push_back(q(uniform(rng, 2, 7), uniform(rng, 1, 2)) * to_rational(g));
    }
    const Rational eps = q(1, 2);
    const Rational c(minimal_tile_scale(d, eps));
    const auto cover = tile_cover(frame, target, eps, c);
    std::vector<RatVector> outer{RatVector(d, Rational(0))};
    for (const auto& t : target) outer.push_back(c * t);
    const LatticeSimplex region(outer);
    for (const auto& tile : cover.tiles) {
      CHECK(unimodular_in_frame(tile));
      for (const auto& v : tile.vertices) CHECK(region.contains(v));
    }
    std::vector<Rational> ratios;
    const auto lambda = ray_ratios(frame, target);
    for (auto i : cover.order) ratios.push_back(lambda[i]);
    CHECK(distance_lemma_holds(ratios));
  }
}

TEST_CASE("distance lemma check") {
  CHECK(distance_lemma_holds({q(3), q(2), q(1)}));
  CHECK(distance_lemma_holds({q(5, 2), q(5, 2)}));
  CHECK_FALSE(distance_lemma_holds({q(1), q(2)}));
}
