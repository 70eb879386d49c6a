#include "doctest.h"
#include "support.hpp"
#include "unicover/cli.hpp"
#include "unicover/subdivide.hpp"

#include <sstream>

using namespace unicover;
using namespace testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

Json parse(const std::string& text) { return Json::parse(text); }

const char* kDemoCone = R"({"format_version":"1","kind":"cone","dim":"2","generators":[["1","0"],["1","2"]]})";

}  // namespace

TEST_CASE("decimal string numbers") {
  CHECK(rational_text(q(6, 4)) == "3/2");
  CHECK(parse_rational(Json("-7/4"), "x") == q(-7, 4));
  CHECK(parse_rational(Json("4/2"), "x") == 2);
  CHECK(parse_rational(Json(5), "x") == 5);
  CHECK_THROWS_AS(parse_rational(Json("1.5"), "x"), FormatError);
  CHECK_THROWS_AS(parse_rational(Json(1.5), "x"), FormatError);
  CHECK_THROWS_AS(parse_rational(Json("1/0"), "x"), FormatError);
  CHECK_THROWS_AS(parse_integer(Json("1/2"), "x"), FormatError);
  CHECK_THROWS_AS(parse_count(Json("-1"), "x"), FormatError);
  const Integer big("123456789012345678901234567890");
  CHECK(parse_integer(Json(big.get_str()), "x") == big);
}

TEST_CASE("round trip of every document kind") {
  const Cone c2(2, ivs({{1, 0}, {1, 2}}));
  CHECK(cone_from_json(to_json(c2)) == c2);
  const Cone c3(3, ivs({{1, 0, 0}, {0, 1, 0}, {1, 1, 2}}));
  const LatticePolytope square(2, ivs({{0, 0}, {1, 0}, {0, 1}, {1, 1}}));
  CHECK(polytope_from_json(to_json(square)) == square);

  auto same = [](const Json& j, auto parse) { CHECK(to_json(parse(j)) == j); };
  same(to_json(cover_cone(c3)), certificate_from_json);
  same(to_json(cover_polytope_multiple(square, 5)), certificate_from_json);
  same(to_json(hilbert_basis(c3)), hilbert_basis_from_json);
  same(to_json(resolve_cone(SimplicialCone(ivs({{1, 0, 0}, {0, 1, 0}, {1, 3, 7}})))), resolution_from_json);
  const auto cert = cover_cone(c2);
  auto broken = cert;
  broken.members.pop_back();
  same(to_json(verify_cover(cert)), report_from_json);
  same(to_json(verify_cover(broken)), report_from_json);
  same(to_json(verify_cover(cert, 0)), report_from_json);

  BoundsTable bounds;
  for (std::size_t d = 2; d <= 5; ++d) bounds.rows.push_back(cone_cover_bounds(d));
  same(to_json(bounds), bounds_table_from_json);
  HSeqTable hseq{3, {{-1, 1}, {0, 1}, {2, q(3, 2)}}};
  same(to_json(hseq), hseq_table_from_json);
  same(to_json(ProbeTable{"cone", probe_minimal_factor(c3, 1, 2)}), probe_table_from_json);
  same(to_json(run_ensemble(2, 4, 9, 5, 1)), ensemble_from_json);
  Triangulation t{"polytope", 2, {ivs({{0, 0}, {1, 0}, {0, 1}})}};
  same(to_json(t), triangulation_from_json);
}

TEST_CASE("property: random cones and certificates round trip") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + static_cast<std::size_t>(trial % 2);
    const Cone c(d, random_basis(rng, d, -6, 6));
    const Json j = to_json(c);
    CHECK(cone_from_json(j) == c);
    CHECK(to_json(cone_from_json(Json::parse(j.dump()))).dump() == j.dump());
    if (d == 2) {
      const Json cert = to_json(cover_cone(c));
      CHECK(to_json(certificate_from_json(cert)) == cert);
    }
  }
}

TEST_CASE("malformed documents name the offending field") {
  auto message = [](const std::string& text) {
    try {
      certificate_from_json(Json::parse(text));
    } catch (const FormatError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string head = R"({"format_version":"1","kind":"cone-cover","dim":"2",)";
  const std::string input = R"("input":{"kind":"cone","dim":"2","generators":[["1","0"],["1","2"]]},)";
  CHECK(message(head + input + R"("claimed_factor":"2"})").rfind("members", 0) == 0);
  CHECK(message(head + input + R"("claimed_factor":"2","members":[[["1","0"],["1"]]]})").rfind("members[0][1]", 0) == 0);
  CHECK(message(head + input + R"("claimed_factor":"two","members":[]})").rfind("claimed_factor", 0) == 0);
  CHECK(message(head + R"("claimed_factor":"2","members":[]})").rfind("input", 0) == 0);
  CHECK(message(R"({"format_version":"2","kind":"cone-cover"})").rfind("format_version", 0) == 0);
  CHECK(message(R"({"format_version":"1","kind":"cone"})").rfind("kind", 0) == 0);
  CHECK(message("[]").rfind("document", 0) == 0);
}

TEST_CASE("cli examples") {
  const auto bounds = run({"bounds", "--dmax", "3"});
  REQUIRE(bounds.code == 0);
  const auto rows = parse(bounds.out)["rows"];
  CHECK(rows[0]["d"] == "2");
  CHECK(rows[0]["gamma"] == "1");
  CHECK(rows[0]["kappa"] == "2");
  CHECK(rows[1]["gamma"] == "4");
  CHECK(rows[1]["kappa"] == "54");

  const auto cert = run({"cover-cone", "-"}, kDemoCone);
  REQUIRE(cert.code == 0);
  const auto verified = run({"verify", "-"}, cert.out);
  CHECK(verified.code == 0);
  CHECK(parse(verified.out)["verdict"] == "pass");

  auto tampered = parse(cert.out);
  tampered["members"].erase(0);
  const auto failed = run({"verify", "-"}, tampered.dump());
  CHECK(failed.code == 2);
  CHECK(parse(failed.out)["witness"].is_array());

  const auto shallow = run({"verify", "--max-depth", "0", "-"}, cert.out);
  CHECK(shallow.code == 3);
  CHECK(parse(shallow.out)["verdict"] == "inconclusive");
}

TEST_CASE("cli subcommands") {
  const auto hb = run({"hilbert", "-"}, kDemoCone);
  REQUIRE(hb.code == 0);
  CHECK(hilbert_basis_from_json(parse(hb.out)).elements == ivs({{1, 0}, {1, 1}, {1, 2}}));

  const auto tri = run({"triangulate", "-"}, kDemoCone);
  REQUIRE(tri.code == 0);
  CHECK(triangulation_from_json(parse(tri.out)).cells.size() == 2);

  const auto res = run({"resolve", "-"}, kDemoCone);
  REQUIRE(res.code == 0);
  CHECK(resolution_from_json(parse(res.out)).members.size() == 2);

  const auto override = run({"cover-cone", "--factor-override", "1/2", "-"}, kDemoCone);
  REQUIRE(override.code == 0);
  CHECK(parse(override.out)["claimed_factor"] == "1/2");
  CHECK(run({"verify", "-"}, override.out).code == 2);

  const std::string triangle = to_json(LatticePolytope(2, ivs({{0, 0}, {1, 0}, {0, 1}}))).dump();
  const auto poly = run({"cover-poly", "--multiple", "5", "-"}, triangle);
  REQUIRE(poly.code == 0);
  CHECK(run({"verify", "-"}, poly.out).code == 0);
  const auto refused = run({"cover-poly", "--multiple", "4", "-"}, triangle);
  CHECK(refused.code == 1);
  CHECK(refused.err.find("minimal admissible multiple is 5") != std::string::npos);

  const auto hseq = run({"hseq", "--d", "3", "--kmax", "3", "--format", "tsv"});
  CHECK(hseq.code == 0);
  CHECK(hseq.out == "d\tk\th\n3\t-1\t1\n3\t0\t1\n3\t1\t1\n3\t2\t3/2\n3\t3\t7/4\n");

  const auto probe = run({"probe", "--range", "1..2", "-"}, kDemoCone);
  REQUIRE(probe.code == 0);
  CHECK(probe_table_from_json(parse(probe.out)).rows.size() == 2);
}

TEST_CASE("cli errors exit with 1") {
  CHECK(run({"verify", "-"}, "{").code == 1);
  const auto bad_field = run({"verify", "-"}, R"({"format_version":"1","kind":"cone-cover","dim":"2"})");
  CHECK(bad_field.code == 1);
  CHECK(bad_field.err.find("input") != std::string::npos);
  CHECK(run({"hilbert", "-"}, R"({"format_version":"1","kind":"polytope","dim":"1","vertices":[["0"]]})").code == 1);
  CHECK(run({"resolve", "-"}, to_json(Cone(3, ivs({{1, 0, 1}, {0, 1, 1}, {-1, 0, 1}, {0, -1, 1}}))).dump()).code == 1);
  CHECK(run({"cover-cone", "--format", "tsv", "-"}, kDemoCone).code == 1);
  CHECK(run({"probe", "--range", "3..1", "-"}, kDemoCone).code == 1);
  CHECK(run({"bounds"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"verify", "/nonexistent/certificate.json"}).code == 1);
}

TEST_CASE("ensemble output does not depend on the number of jobs") {
  const auto one = run({"--seed", "17", "ensemble", "--d", "2", "--count", "12", "--max-entry", "15"});
  const auto four = run({"--jobs", "4", "--seed", "17", "ensemble", "--d", "2", "--count", "12", "--max-entry", "15"});
  REQUIRE(one.code == 0);
  CHECK(one.out == four.out);
  const auto summary = ensemble_from_json(parse(one.out));
  CHECK(summary.passed == 12);
  CHECK(run({"--seed", "18", "ensemble", "--d", "2", "--count", "12", "--max-entry", "15"}).out != one.out);

  const auto tsv1 = run({"--format", "tsv", "ensemble", "--d", "3", "--count", "3", "--max-entry", "2", "--seed", "4"});
  const auto tsv3 = run({"--jobs", "3", "--format", "tsv", "ensemble", "--d", "3", "--count", "3", "--max-entry", "2",
                         "--seed", "4"});
  REQUIRE(tsv1.code == 0);
  CHECK(tsv1.out == tsv3.out);
  CHECK(tsv1.out.rfind("index\t", 0) == 0);
}
