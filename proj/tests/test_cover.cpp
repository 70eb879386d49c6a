#include "doctest.h"
#include "support.hpp"
#include "unicover/cover.hpp"
#include "unicover/verify.hpp"

#include <algorithm>

using namespace unicover;
using namespace testing;

namespace {

// gamma and kappa recomputed by loops rather than closed forms.
Integer gamma_oracle(long d) {
  long s = 0;
  while (s * s < d - 1) ++s;
  return Integer(s * (d - 1));
}

Rational kappa_oracle(long d) {
  const long g = gamma_oracle(d).get_si();
  Rational k = Rational(g * d * (d + 1)) / 2;
  for (long i = 2; i < g; ++i) k *= q(3, 2);
  for (long i = g; i < 2; ++i) k /= q(3, 2);
  return k;
}

bool has_generator(const SimplicialCone& c, const IntVector& g) {
  return std::find(c.generators().begin(), c.generators().end(), g) != c.generators().end();
}

}  // namespace

TEST_CASE("bound parameters") {
  CHECK(cone_cover_bounds(2).kappa == 2);
  CHECK(cone_cover_bounds(3).gamma == 4);
  CHECK(cone_cover_bounds(3).kappa == 54);
  CHECK(cone_cover_bounds(4).gamma == 6);
  CHECK(cone_cover_bounds(4).kappa == q(1215, 4));
  CHECK(cone_cover_bounds(2).pol_factor == 5);
  CHECK_THROWS_AS(cone_cover_bounds(1), DomainError);
  for (long d = 2; d <= 10; ++d) {
    const auto b = cone_cover_bounds(static_cast<std::size_t>(d));
    CHECK(b.gamma == gamma_oracle(d));
    CHECK(b.kappa == kappa_oracle(d));
    CHECK(b.pol_factor * b.pol_factor >= Integer(d * (d + 1) * (d + 1)));
    CHECK((b.pol_factor - 1) * (b.pol_factor - 1) < Integer(d * (d + 1) * (d + 1)));
    if (d > 2) CHECK(b.kappa > cone_cover_bounds(static_cast<std::size_t>(d - 1)).kappa);
  }
}

TEST_CASE("corner cover examples") {
  const SimplicialCone u(ivs({{1, 0}, {0, 1}}));
  const auto cu = corner_cover(u, 0);
  REQUIRE(cu.members.size() == 1);
  CHECK(cu.members.front() == u);

  const SimplicialCone c(ivs({{1, 0}, {1, 2}}));
  const auto cc = corner_cover(c, 0);
  REQUIRE(cc.members.size() == 1);
  CHECK(cc.members.front() == SimplicialCone(ivs({{1, 0}, {1, 1}})));
  CHECK(cc.vertex == iv({1, 0}));

  const SimplicialCone c3(ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  for (std::size_t i = 0; i < 3; ++i) {
    const auto corner = corner_cover(c3, i);
    CHECK_FALSE(corner.members.empty());
    for (const auto& m : corner.members) {
      CHECK(m.unimodular());
      CHECK(has_generator(m, corner.vertex));
      for (const auto& g : m.generators()) {
        CHECK(c3.contains(g));
        if (g == corner.vertex) continue;
        const auto xi = c3.coefficients(g);
        CHECK(xi[i] >= 0);
        CHECK(xi[i] < 1);
      }
    }
  }
}

TEST_CASE("property: corner covers contain a neighborhood of the vertex") {
  std::mt19937_64 rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = trial % 2 == 0 ? 2 : 3;
    const SimplicialCone c(random_basis(rng, d, -4, 5));
    if (c.multiplicity() > 12) continue;
    const std::size_t vertex = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(d) - 1));
    const auto corner = corner_cover(c, vertex);
    CHECK(corner.eta > 0);
    CHECK(corner.eta <= 1);
    for (const auto& m : corner.members) {
      CHECK(m.unimodular());
      CHECK(has_generator(m, corner.vertex));
      for (const auto& g : m.generators()) {
        CHECK(c.contains(g));
        CHECK(c.height(to_rational(g)) <= corner.containment_factor);
        if (g != corner.vertex) CHECK(c.coefficients(g)[vertex] < 1);
      }
    }
    // points v1 + sum beta_i (v_i - v1) with 0 <= beta_i < eta
    const RatVector v1 = to_rational(corner.vertex);
    for (int s = 0; s < 50; ++s) {
      RatVector y = v1;
      for (std::size_t i = 0; i < d; ++i) {
        if (i == vertex) continue;
        const Rational beta = corner.eta * q(uniform(rng, 0, 99), 100);
        y = y + beta * (to_rational(c.generator(i)) - v1);
      }
      CHECK(std::any_of(corner.members.begin(), corner.members.end(),
                        [&](const SimplicialCone& m) { return m.contains(y); }));
    }
  }
}

TEST_CASE("cover cone examples") {
  const auto unimodular = cover_cone(Cone(2, ivs({{1, 0}, {0, 1}})));
  CHECK(unimodular.members == std::vector<std::vector<IntVector>>{ivs({{0, 1}, {1, 0}})});
  CHECK(unimodular.claimed_factor <= 2);

  const auto two = cover_cone(Cone(2, ivs({{1, 0}, {1, 2}})));
  CHECK(two.members == std::vector<std::vector<IntVector>>{ivs({{1, 0}, {1, 1}}), ivs({{1, 1}, {1, 2}})});
  CHECK(verify_cover(two).verdict == Verdict::pass);

  const Cone c3(3, ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  const auto three = cover_cone(c3);
  CHECK(three.claimed_factor == 54);
  CHECK(verify_cover(three).verdict == Verdict::pass);
  // regression value
  CHECK(three.members.size() == 3);

  const auto loose = cover_cone(c3, q(1));
  CHECK(loose.claimed_factor == 1);
  CHECK(verify_cover(loose).verdict == Verdict::fail);
  CHECK_THROWS_AS(cover_cone(Cone(1, ivs({{1}}))), DomainError);
}

TEST_CASE("property: two-dimensional covers") {
  std::mt19937_64 rng(72);
  for (int trial = 0; trial < 40; ++trial) {
    const auto gens = random_basis(rng, 2, -20, 20);
    const Cone c(2, gens);
    const auto cert = cover_cone(c);
    for (const auto& m : cert.members) {
      const SimplicialCone s(m);
      CHECK(s.unimodular());
      for (const auto& g : m) CHECK(*min_height(c.generators(), to_rational(g)) <= 1);
    }
    CHECK(verify_cover(cert).verdict == Verdict::pass);
  }
}

TEST_CASE("property: covers of empty three-dimensional cones") {
  std::mt19937_64 rng(73);
  const Rational kappa = cone_cover_bounds(3).kappa;
  for (int trial = 0; trial < 8; ++trial) {
    const auto c = random_empty_cone(rng, 3, 5, 8);
    const auto cert = cover_cone(c.as_cone());
    for (const auto& m : cert.members) {
      CHECK(SimplicialCone(m).unimodular());
      for (const auto& g : m) CHECK(c.height(to_rational(g)) <= kappa);
    }
    const auto report = verify_cover(cert);
    CHECK(report.verdict == Verdict::pass);
    CHECK(report.coverage_fraction == 1);
  }
}

TEST_CASE("every member of a three-dimensional cover is essential") {
  for (long l : {3, 5}) {
    const auto cert = cover_cone(Cone(3, ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, l}})));
    REQUIRE(verify_cover(cert).verdict == Verdict::pass);
    for (std::size_t m = 0; m < cert.members.size(); ++m) {
      auto broken = cert;
      broken.members.erase(broken.members.begin() + static_cast<std::ptrdiff_t>(m));
      CHECK(verify_cover(broken).verdict == Verdict::fail);
    }
  }
}

TEST_CASE("cover of a non-simplicial cone") {
  const Cone square(3, ivs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}));
  const auto cert = cover_cone(square);
  CHECK(verify_cover(cert).verdict == Verdict::pass);
}

TEST_CASE("polytope multiple examples") {
  const LatticePolytope square(2, ivs({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  const auto seven = cover_polytope_multiple(square, 7);
  CHECK(verify_cover(seven).verdict == Verdict::pass);
  for (const auto& m : seven.members) CHECK(simplex_multiplicity(LatticeSimplex::from_integer(m)) == 1);

  const LatticePolytope triangle(2, ivs({{0, 0}, {1, 0}, {0, 1}}));
  const auto five = cover_polytope_multiple(triangle, 5);
  CHECK(verify_cover(five).verdict == Verdict::pass);

  const auto segment = cover_polytope_multiple(LatticePolytope(1, ivs({{0}, {1}})), 3);
  CHECK(segment.members == std::vector<std::vector<IntVector>>{ivs({{0}, {1}}), ivs({{1}, {2}}), ivs({{2}, {3}})});
  CHECK(verify_cover(segment).verdict == Verdict::pass);

  try {
    cover_polytope_multiple(square, 4);
    FAIL("expected refusal");
  } catch (const MultipleNotAdmissible& e) {
    CHECK(e.minimal_multiple() == 5);
  }
  CHECK(polytope_inner_factor(square) == 1);
}

TEST_CASE("probe minimal factor") {
  const auto two = probe_minimal_factor(Cone(2, ivs({{1, 0}, {1, 2}})), 1, 3);
  REQUIRE(two.size() == 3);
  for (const auto& row : two) CHECK(row.verdict == "pass");
  const auto unimodular = probe_minimal_factor(Cone(2, ivs({{1, 0}, {0, 1}})), 1, 1);
  CHECK(unimodular.front().verdict == "pass");
  const auto three = probe_minimal_factor(Cone(3, ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}})), 1, 3);
  // recorded data: the cover of this cone reaches height 3/2
  CHECK(three[0].verdict == "fail");
  CHECK(three[1].verdict == "pass");
  CHECK(three[2].verdict == "pass");
  const auto poly = probe_minimal_factor(LatticePolytope(2, ivs({{0, 0}, {1, 0}, {0, 1}})), 4, 5);
  CHECK(poly[0].verdict == "refused");
  CHECK(poly[1].verdict == "pass");
}
