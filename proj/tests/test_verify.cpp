#include "doctest.h"
#include "support.hpp"
#include "unicover/verify.hpp"

#include <algorithm>

using namespace unicover;
using namespace testing;

namespace {

CoverCertificate cone_certificate(const Cone& c, std::vector<std::vector<IntVector>> members, Rational factor = 2) {
  CoverCertificate cert;
  cert.kind = CertificateKind::cone_cover;
  cert.dim = c.dim();
  cert.cone = c;
  cert.members = std::move(members);
  cert.claimed_factor = factor;
  return cert;
}

}  // namespace

TEST_CASE("verify examples") {
  const Cone c(2, ivs({{1, 0}, {1, 2}}));
  const auto good = cone_certificate(c, {ivs({{1, 0}, {1, 1}}), ivs({{1, 1}, {1, 2}})});
  const auto pass = verify_cover(good);
  CHECK(pass.verdict == Verdict::pass);
  CHECK(pass.coverage_fraction == 1);
  CHECK(pass.claimed_factor == 2);

  auto missing = good;
  missing.members.pop_back();
  const auto fail = verify_cover(missing);
  CHECK(fail.verdict == Verdict::fail);
  CHECK(fail.failed_check == "coverage");
  REQUIRE(fail.witness.has_value());
  CHECK(contains_point(c, *fail.witness));
  CHECK_FALSE(certificate_covers(missing, *fail.witness));
  CHECK(SimplicialCone(ivs({{1, 1}, {1, 2}})).contains(*fail.witness));

  const auto doubled = verify_cover(cone_certificate(c, {ivs({{1, 0}, {1, 2}})}));
  CHECK(doubled.verdict == Verdict::fail);
  CHECK(doubled.failed_check == "unimodular");
  CHECK(doubled.failed_member == 0u);
  REQUIRE(doubled.witness.has_value());
  CHECK(*doubled.witness == rv({1, 1}));
}

TEST_CASE("member predicates") {
  const Cone c(2, ivs({{1, 0}, {1, 2}}));
  const auto outside = verify_cover(cone_certificate(c, {ivs({{1, 0}, {0, 1}})}));
  CHECK(outside.verdict == Verdict::fail);
  CHECK(outside.failed_check == "containment");
  CHECK(outside.witness == rv({0, 1}));

  const auto tight = verify_cover(cone_certificate(c, {ivs({{1, 0}, {1, 1}}), ivs({{1, 1}, {1, 2}})}, q(1, 2)));
  CHECK(tight.verdict == Verdict::fail);
  CHECK(tight.failed_check == "factor");
  CHECK(tight.witness == rv({1, 0}));

  const auto degenerate = verify_cover(cone_certificate(c, {ivs({{1, 1}, {2, 2}})}));
  CHECK(degenerate.failed_check == "unimodular");
  CHECK_FALSE(degenerate.witness.has_value());
}

TEST_CASE("malformed certificates are structural errors") {
  const Cone c(2, ivs({{1, 0}, {1, 2}}));
  CHECK_THROWS_AS(verify_cover(cone_certificate(c, {ivs({{1, 0}})})), StructuralError);
  CHECK_THROWS_AS(verify_cover(cone_certificate(c, {ivs({{1, 0, 0}, {1, 1, 0}})})), StructuralError);
  CoverCertificate no_cone;
  no_cone.dim = 2;
  CHECK_THROWS_AS(verify_cover(no_cone), StructuralError);
  CoverCertificate no_polytope;
  no_polytope.kind = CertificateKind::polytope_cover;
  no_polytope.dim = 2;
  CHECK_THROWS_AS(verify_cover(no_polytope), StructuralError);
}

TEST_CASE("coverage lower bound") {
  const Cone c(2, ivs({{1, 0}, {1, 2}}));
  const auto good = cone_certificate(c, {ivs({{1, 0}, {1, 1}}), ivs({{1, 1}, {1, 2}})});
  CHECK(coverage_lower_bound(good) == 1);
  CHECK(coverage_lower_bound(cone_certificate(c, {})) == 0);

  // the unit cone covered only by a thin sliver: cone{(1,0),(3,1)}
  const Cone wide(2, ivs({{1, 0}, {0, 1}}));
  const auto partial = cone_certificate(wide, {ivs({{1, 0}, {1, 1}}), ivs({{2, 3}, {1, 2}})});
  const Rational shallow = coverage_lower_bound(partial, 4);
  const Rational deep = coverage_lower_bound(partial, 12);
  CHECK(shallow > 0);
  CHECK(deep < 1);
  CHECK(shallow <= deep);
}

TEST_CASE("inconclusive at depth zero") {
  const Cone c(2, ivs({{1, 0}, {1, 2}}));
  const auto good = cone_certificate(c, {ivs({{1, 0}, {1, 1}}), ivs({{1, 1}, {1, 2}})});
  const auto report = verify_cover(good, 0);
  CHECK(report.verdict == Verdict::inconclusive);
  CHECK_FALSE(report.deepest_cell.empty());
}

TEST_CASE("property: passing certificates survive point sampling") {
  std::mt19937_64 rng(81);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t d = trial % 2 == 0 ? 2 : 3;
    const auto c = d == 2 ? SimplicialCone(random_basis(rng, 2, -9, 9)) : random_empty_cone(rng, 3, 4, 5);
    const auto cert = cover_cone(c.as_cone());
    REQUIRE(verify_cover(cert).verdict == Verdict::pass);
    for (int s = 0; s < 2000; ++s) CHECK(certificate_covers(cert, random_combination(rng, c.generators())));
  }
  const LatticePolytope square(2, ivs({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  const auto cert = cover_polytope_multiple(square, 5);
  REQUIRE(verify_cover(cert).verdict == Verdict::pass);
  for (int s = 0; s < 2000; ++s) {
    const RatVector p{q(uniform(rng, 0, 500), 100), q(uniform(rng, 0, 500), 100)};
    CHECK(certificate_covers(cert, p));
  }
}

TEST_CASE("property: deleting a member of a two-dimensional cover is detected") {
  std::mt19937_64 rng(82);
  for (int trial = 0; trial < 15; ++trial) {
    const Cone c(2, random_basis(rng, 2, -12, 12));
    const auto cert = cover_cone(c);
    for (std::size_t drop = 0; drop < cert.members.size(); ++drop) {
      auto mutated = cert;
      mutated.members.erase(mutated.members.begin() + static_cast<long>(drop));
      const auto report = verify_cover(mutated);
      CHECK(report.verdict == Verdict::fail);
      REQUIRE(report.witness.has_value());
      CHECK(contains_point(c, *report.witness));
      CHECK_FALSE(certificate_covers(mutated, *report.witness));
    }
  }
}

TEST_CASE("property: corrupted generators yield parallelepiped witnesses") {
  std::mt19937_64 rng(83);
  const LatticePolytope square(2, ivs({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  const auto poly = cover_polytope_multiple(square, 5);
  for (int trial = 0; trial < 40; ++trial) {
    auto cert = trial % 2 == 0 ? cover_cone(Cone(2, random_basis(rng, 2, -9, 9))) : poly;
    const auto m = static_cast<std::size_t>(uniform(rng, 0, static_cast<long>(cert.members.size()) - 1));
    auto& member = cert.members[m];
    member[0] = member[0] + random_vector(rng, 2, -3, 3);
    std::vector<IntVector> span = member;
    if (cert.kind == CertificateKind::polytope_cover)
      span = {member[1] - member[0], member[2] - member[0]};
    const Integer det = integer_determinant(IntMatrix::from_columns(span));
    if (det == 0 || abs(det) == 1) continue;
    const auto report = verify_cover(cert);
    CHECK(report.verdict == Verdict::fail);
    CHECK(report.failed_check == "unimodular");
    REQUIRE(report.witness.has_value());
    RatVector offset = *report.witness;
    if (cert.kind == CertificateKind::polytope_cover) offset = offset - to_rational(member[0]);
    CHECK(is_integral(offset));
    CHECK_FALSE(is_zero(offset));
    const auto xi = solve_in_columns(std::span<const IntVector>(span), offset);
    REQUIRE(xi.has_value());
    for (const auto& t : *xi) CHECK((t >= 0 && t < 1));
  }
}
