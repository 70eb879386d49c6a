#include "doctest.h"
#include "support.hpp"
#include "unicover/subdivide.hpp"

#include <algorithm>

using namespace unicover;
using namespace testing;

namespace {

Rational total_volume(const std::vector<SimplicialCone>& cones, const SimplicialCone& reference) {
  Rational s = 0;
  for (const auto& c : cones) s += cross_section_volume(c, reference);
  return s;
}

Integer simplex_volume(const LatticeSimplex& s) {
  const auto v = s.integer_vertices();
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < v.size(); ++i) edges.push_back(v[i] - v[0]);
  return abs(integer_determinant(IntMatrix::from_rows(edges)));
}

}  // namespace

TEST_CASE("triangulate cone examples") {
  const SimplicialCone s(ivs({{1, 0}, {1, 2}}));
  const auto f = triangulate_cone(s.as_cone());
  REQUIRE(f.members.size() == 1);
  CHECK(f.members.front() == s);
  const auto square = triangulate_cone(Cone(3, ivs({{1, 0, 0}, {0, 1, 0}, {-1, 0, 1}, {0, -1, 1}})));
  CHECK(square.members.size() == 2);
  CHECK(triangulate_cone(Cone(2, ivs({{1, 0}, {0, 1}}))).members.size() == 1);
  CHECK_THROWS_AS(triangulate_cone(Cone(3, ivs({{1, 0, 0}, {0, 1, 0}}))), DomainError);
}

TEST_CASE("stellar subdivision examples") {
  const auto two = stellar_subdivision(SimplicialCone(ivs({{1, 0}, {1, 2}})), iv({1, 1}));
  REQUIRE(two.size() == 2);
  CHECK(std::find(two.begin(), two.end(), SimplicialCone(ivs({{1, 0}, {1, 1}}))) != two.end());
  CHECK(std::find(two.begin(), two.end(), SimplicialCone(ivs({{1, 1}, {1, 2}}))) != two.end());
  CHECK(stellar_subdivision(SimplicialCone(ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}})), iv({1, 1, 1})).size() == 3);
  CHECK(stellar_subdivision(SimplicialCone(ivs({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})), iv({1, 1, 0})).size() == 2);
  const SimplicialCone c(ivs({{1, 0}, {1, 2}}));
  CHECK_THROWS_AS(stellar_subdivision(c, iv({0, 1})), PreconditionError);
  CHECK_THROWS_AS(stellar_subdivision(c, iv({2, 0})), PreconditionError);
  CHECK_THROWS_AS(stellar_subdivision(c, iv({0, 0})), PreconditionError);
}

TEST_CASE("refine to empty examples") {
  const SimplicialCone unimodular(ivs({{1, 0}, {0, 1}}));
  CHECK(refine_to_empty(unimodular).members == std::vector<SimplicialCone>{unimodular});
  const auto f = refine_to_empty(SimplicialCone(ivs({{1, 0}, {1, 2}})));
  CHECK(f.members.size() == 2);
  for (const auto& m : f.members) CHECK(m.unimodular());
  const SimplicialCone c(ivs({{1, 0, 0}, {0, 1, 0}, {-1, -1, 3}}));
  const auto g = refine_to_empty(c);
  CHECK(g.members.size() > 1);
  const auto base = base_simplex(c);
  for (const auto& m : g.members) {
    CHECK(is_empty_simplex(base_simplex(m)));
    for (const auto& v : m.generators()) CHECK(base.contains(to_rational(v)));
  }
  CHECK(total_volume(g.members, c) == c.multiplicity());
}

TEST_CASE("polytope triangulation examples") {
  const auto square = triangulate_polytope_empty(LatticePolytope(2, ivs({{0, 0}, {1, 0}, {0, 1}, {1, 1}})));
  CHECK(square.size() == 2);
  for (const auto& s : square) CHECK(simplex_multiplicity(s) == 1);
  const auto split = triangulate_polytope_empty(LatticePolytope(2, ivs({{0, 0}, {2, 0}, {0, 1}})));
  CHECK(split.size() == 2);
  for (const auto& s : split) CHECK(is_empty_simplex(s));
  const auto empty = LatticeSimplex::from_integer(ivs({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  const auto same = triangulate_polytope_empty(LatticePolytope(3, empty.integer_vertices()));
  REQUIRE(same.size() == 1);
  CHECK(same.front() == empty);
  CHECK_THROWS_AS(triangulate_polytope_empty(LatticePolytope(2, ivs({{0, 0}, {1, 1}}))), DomainError);
}

TEST_CASE("property: subdivisions conserve volume and decrease multiplicity") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = static_cast<std::size_t>(uniform(rng, 2, 3));
    const SimplicialCone c(random_basis(rng, n, -4, 6));
    for (const auto& bp : box_points_with_coefficients(c.generators())) {
      if (is_zero(bp.point)) continue;
      const std::size_t zero_count = static_cast<std::size_t>(
          std::count(bp.coefficients.begin(), bp.coefficients.end(), Rational(0)));
      if (zero_count + 1 >= n) continue;
      const auto kids = stellar_subdivision(c, bp.point);
      CHECK(total_volume(kids, c) == c.multiplicity());
      for (const auto& k : kids) CHECK(k.multiplicity() < c.multiplicity());
      break;
    }
    const auto fan = refine_to_empty(c);
    CHECK(total_volume(fan.members, c) == c.multiplicity());
    for (const auto& m : fan.members) CHECK(is_empty_simplex(base_simplex(m)));
    // lattice point counts strictly decrease along the provenance
    for (const auto& ev : fan.provenance) {
      const auto parent_points = lattice_points(base_simplex(SimplicialCone(ev.parent))).size();
      for (const auto& kid : stellar_subdivision(SimplicialCone(ev.parent), ev.point))
        CHECK(lattice_points(base_simplex(kid)).size() < parent_points);
    }
  }
}

TEST_CASE("property: cone triangulations conserve volume") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<IntVector> gens;
    for (int i = 0; i < 6; ++i) {
      IntVector g = random_vector(rng, 3, -4, 4);
      g[2] = uniform(rng, 1, 5);
      gens.push_back(g);
    }
    const Cone c(3, gens);
    if (!c.full_dimensional()) continue;
    const auto fan = triangulate_cone(c);
    // two triangulations from different placing orders give the same total
    // volume measured on the cross-section z = 1 (scaled by a common factor)
    auto measure = [](const std::vector<SimplicialCone>& cells) {
      Rational total = 0;
      for (const auto& cell : cells) {
        std::vector<RatVector> pts;
        for (const auto& g : cell.generators()) pts.push_back(Rational(1, 1) / Rational(g[2]) * to_rational(g));
        std::vector<RatVector> rows{pts[1] - pts[0], pts[2] - pts[0]};
        const Rational det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0];
        total += abs(det);
      }
      return total;
    };
    auto reversed = c.generators();
    std::reverse(reversed.begin(), reversed.end());
    std::vector<SimplicialCone> other;
    for (const auto& cell : placing_triangulation(reversed)) other.emplace_back(cell);
    CHECK(measure(fan.members) == measure(other));
    for (const auto& m : fan.members)
      for (const auto& g : m.generators())
        CHECK(std::find(c.generators().begin(), c.generators().end(), g) != c.generators().end());
  }
}

TEST_CASE("property: empty triangulations of random polygons") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<IntVector> pts;
    for (int i = 0; i < 5; ++i) pts.push_back(random_vector(rng, 2, 0, 5));
    const LatticePolytope p(2, pts);
    if (!p.full_dimensional()) continue;
    const auto simplices = triangulate_polytope_empty(p);
    Integer total = 0;
    for (const auto& s : simplices) {
      CHECK(is_empty_simplex(s));
      total += simplex_volume(s);
    }
    // vertex-only triangulation of the same polygon
    std::vector<IntVector> lifted;
    for (auto v : p.vertices()) {
      v.push_back(1);
      lifted.push_back(v);
    }
    Integer expected = 0;
    for (const auto& cell : placing_triangulation(lifted))
      expected += abs(integer_determinant(IntMatrix::from_columns(cell)));
    CHECK(total == expected);
  }
}
