#include "unicover/io.hpp"

#include <regex>
#include <sstream>

namespace unicover {

namespace {

[[noreturn]] void malformed(const std::string& field, const std::string& what) {
  throw FormatError(field + ": " + what);
}

const Json& need(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) malformed(path.empty() ? "document" : path, "expected an object");
  const auto it = j.find(key);
  const std::string field = path.empty() ? key : path + "." + key;
  if (it == j.end()) malformed(field, "missing");
  return *it;
}

std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

void check_header(const Json& j, const std::string& kind) {
  const auto& version = need(j, "format_version", "");
  if (!version.is_string() || version.get<std::string>() != kFormatVersion)
    malformed("format_version", "expected \"" + std::string(kFormatVersion) + "\"");
  const auto found = document_kind(j);
  if (found != kind) malformed("kind", "expected \"" + kind + "\", found \"" + found + "\"");
}

Json header(const std::string& kind) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  return j;
}

std::string count_text(std::size_t n) { return std::to_string(n); }
std::string long_text(long n) { return std::to_string(n); }

long parse_long(const Json& j, const std::string& field) {
  const Integer n = parse_integer(j, field);
  if (!n.fits_slong_p()) malformed(field, "out of range");
  return n.get_si();
}

bool parse_bool(const Json& j, const std::string& field) {
  if (!j.is_boolean()) malformed(field, "expected true or false");
  return j.get<bool>();
}

std::string parse_string(const Json& j, const std::string& field) {
  if (!j.is_string()) malformed(field, "expected a string");
  return j.get<std::string>();
}

const Json& array_at(const Json& j, const std::string& field) {
  if (!j.is_array()) malformed(field, "expected an array");
  return j;
}

Json int_vector_json(const IntVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

Json rat_vector_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(rational_text(x));
  return a;
}

Json vectors_json(const std::vector<IntVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(int_vector_json(v));
  return a;
}

Json rat_vectors_json(const std::vector<RatVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(rat_vector_json(v));
  return a;
}

IntVector parse_int_vector(const Json& j, const std::string& field, std::size_t dim) {
  array_at(j, field);
  if (j.size() != dim) malformed(field, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(j.size()));
  IntVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_integer(j[i], index(field, i)));
  return v;
}

RatVector parse_rat_vector(const Json& j, const std::string& field, std::size_t dim) {
  array_at(j, field);
  if (j.size() != dim) malformed(field, "expected " + std::to_string(dim) + " coordinates, found " + std::to_string(j.size()));
  RatVector v;
  for (std::size_t i = 0; i < j.size(); ++i) v.push_back(parse_rational(j[i], index(field, i)));
  return v;
}

std::vector<IntVector> parse_vectors(const Json& j, const std::string& field, std::size_t dim) {
  array_at(j, field);
  std::vector<IntVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_int_vector(j[i], index(field, i), dim));
  return out;
}

std::vector<RatVector> parse_rat_vectors(const Json& j, const std::string& field, std::size_t dim) {
  array_at(j, field);
  std::vector<RatVector> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rat_vector(j[i], index(field, i), dim));
  return out;
}

std::vector<std::vector<IntVector>> parse_vector_lists(const Json& j, const std::string& field, std::size_t dim) {
  array_at(j, field);
  std::vector<std::vector<IntVector>> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_vectors(j[i], index(field, i), dim));
  return out;
}

std::size_t parse_dim(const Json& j, const std::string& path) {
  const std::string field = join(path, "dim");
  const std::size_t d = parse_count(need(j, "dim", path), field);
  if (d == 0) malformed(field, "must be positive");
  return d;
}

// Embedded descriptors carry kind but no format_version.
Json cone_payload(const Cone& c) {
  Json j;
  j["kind"] = "cone";
  j["dim"] = count_text(c.dim());
  j["generators"] = vectors_json(c.generators());
  return j;
}

Cone parse_cone_payload(const Json& j, const std::string& path) {
  const std::size_t d = parse_dim(j, path);
  const std::string field = join(path, "generators");
  auto gens = parse_vectors(need(j, "generators", path), field, d);
  if (gens.empty()) malformed(field, "expected at least one generator");
  try {
    return Cone(d, std::move(gens));
  } catch (const std::exception& e) {
    malformed(field, e.what());
  }
}

Json polytope_payload(const LatticePolytope& p) {
  Json j;
  j["kind"] = "polytope";
  j["dim"] = count_text(p.ambient_dim());
  j["vertices"] = vectors_json(p.vertices());
  return j;
}

LatticePolytope parse_polytope_payload(const Json& j, const std::string& path) {
  const std::size_t d = parse_dim(j, path);
  const std::string field = join(path, "vertices");
  auto points = parse_vectors(need(j, "vertices", path), field, d);
  if (points.empty()) malformed(field, "expected at least one vertex");
  try {
    return LatticePolytope(d, std::move(points));
  } catch (const std::exception& e) {
    malformed(field, e.what());
  }
}

Verdict parse_verdict(const Json& j, const std::string& field) {
  const auto s = parse_string(j, field);
  if (s == "pass") return Verdict::pass;
  if (s == "fail") return Verdict::fail;
  if (s == "inconclusive") return Verdict::inconclusive;
  malformed(field, "unknown verdict \"" + s + "\"");
}

template <class Row, class Parse>
std::vector<Row> parse_rows(const Json& j, Parse parse) {
  const auto& rows = array_at(need(j, "rows", ""), "rows");
  std::vector<Row> out;
  for (std::size_t i = 0; i < rows.size(); ++i) out.push_back(parse(rows[i], index("rows", i)));
  return out;
}

}  // namespace

std::string rational_text(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<long long>())));
  if (!j.is_string()) malformed(field, "expected a decimal string such as \"3\" or \"-7/4\"");
  static const std::regex pattern("-?[0-9]+(/[0-9]+)?");
  const auto s = j.get<std::string>();
  if (!std::regex_match(s, pattern)) malformed(field, "not a decimal integer or fraction: \"" + s + "\"");
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  const Integer den(s.substr(slash + 1));
  if (den == 0) malformed(field, "zero denominator");
  return fraction(Integer(s.substr(0, slash)), den);
}

Integer parse_integer(const Json& j, const std::string& field) {
  const Rational q = parse_rational(j, field);
  if (q.get_den() != 1) malformed(field, "expected an integer");
  return q.get_num();
}

std::size_t parse_count(const Json& j, const std::string& field) {
  const Integer n = parse_integer(j, field);
  if (n < 0 || !n.fits_ulong_p()) malformed(field, "expected a non-negative count");
  return n.get_ui();
}

std::string document_kind(const Json& j) { return parse_string(need(j, "kind", ""), "kind"); }

Json to_json(const Cone& c) {
  Json j = header("cone");
  j.update(cone_payload(c));
  return j;
}

Cone cone_from_json(const Json& j) {
  check_header(j, "cone");
  return parse_cone_payload(j, "");
}

Json to_json(const LatticePolytope& p) {
  Json j = header("polytope");
  j.update(polytope_payload(p));
  return j;
}

LatticePolytope polytope_from_json(const Json& j) {
  check_header(j, "polytope");
  return parse_polytope_payload(j, "");
}

Json to_json(const CoverCertificate& cert) {
  const bool cone = cert.kind == CertificateKind::cone_cover;
  Json j = header(cone ? "cone-cover" : "polytope-cover");
  j["dim"] = count_text(cert.dim);
  if (cone && cert.cone) j["input"] = cone_payload(*cert.cone);
  if (!cone && cert.polytope) j["input"] = polytope_payload(*cert.polytope);
  if (!cone) j["multiple"] = cert.multiple.get_str();
  j["claimed_factor"] = rational_text(cert.claimed_factor);
  Json members = Json::array();
  for (const auto& m : cert.members) members.push_back(vectors_json(m));
  j["members"] = std::move(members);
  return j;
}

CoverCertificate certificate_from_json(const Json& j) {
  const auto kind = document_kind(j);
  if (kind != "cone-cover" && kind != "polytope-cover")
    malformed("kind", "expected \"cone-cover\" or \"polytope-cover\", found \"" + kind + "\"");
  check_header(j, kind);
  CoverCertificate cert;
  cert.kind = kind == "cone-cover" ? CertificateKind::cone_cover : CertificateKind::polytope_cover;
  cert.dim = parse_dim(j, "");
  const auto& input = need(j, "input", "");
  const std::string input_kind = parse_string(need(input, "kind", "input"), "input.kind");
  if (cert.kind == CertificateKind::cone_cover) {
    if (input_kind != "cone") malformed("input.kind", "expected \"cone\"");
    cert.cone = parse_cone_payload(input, "input");
    if (cert.cone->dim() != cert.dim) malformed("input.dim", "does not match dim");
  } else {
    if (input_kind != "polytope") malformed("input.kind", "expected \"polytope\"");
    cert.polytope = parse_polytope_payload(input, "input");
    if (cert.polytope->ambient_dim() != cert.dim) malformed("input.dim", "does not match dim");
    cert.multiple = parse_integer(need(j, "multiple", ""), "multiple");
    if (cert.multiple <= 0) malformed("multiple", "must be positive");
  }
  cert.claimed_factor = parse_rational(need(j, "claimed_factor", ""), "claimed_factor");
  cert.members = parse_vector_lists(need(j, "members", ""), "members", cert.dim);
  return cert;
}

Json to_json(const HilbertBasis& hb) {
  Json j = header("hilbert-basis");
  const std::size_t d = hb.cone_generators.empty() ? 0 : hb.cone_generators.front().size();
  j["dim"] = count_text(d);
  j["cone_generators"] = vectors_json(hb.cone_generators);
  j["elements"] = vectors_json(hb.elements);
  return j;
}

HilbertBasis hilbert_basis_from_json(const Json& j) {
  check_header(j, "hilbert-basis");
  const std::size_t d = parse_dim(j, "");
  HilbertBasis hb;
  hb.cone_generators = parse_vectors(need(j, "cone_generators", ""), "cone_generators", d);
  hb.elements = parse_vectors(need(j, "elements", ""), "elements", d);
  return hb;
}

Json to_json(const Resolution& r) {
  Json j = header("resolution");
  j["dim"] = count_text(r.input.size());
  j["input"] = vectors_json(r.input);
  j["generations"] = long_text(r.generations);
  j["bound_factor"] = rational_text(r.bound_factor);
  Json members = Json::array();
  for (const auto& m : r.members) members.push_back(vectors_json(m.generators()));
  j["members"] = std::move(members);
  Json ledger = Json::array();
  for (const auto& e : r.ledger) {
    Json row;
    row["point"] = int_vector_json(e.point);
    row["generation"] = long_text(e.generation);
    Json parents = Json::array();
    for (long g : e.parent_generations) parents.push_back(long_text(g));
    row["parent_generations"] = std::move(parents);
    row["factor"] = rational_text(e.factor);
    row["height"] = rational_text(e.height);
    ledger.push_back(std::move(row));
  }
  j["ledger"] = std::move(ledger);
  return j;
}

Resolution resolution_from_json(const Json& j) {
  check_header(j, "resolution");
  const std::size_t d = parse_dim(j, "");
  Resolution r;
  r.input = parse_vectors(need(j, "input", ""), "input", d);
  r.generations = parse_long(need(j, "generations", ""), "generations");
  r.bound_factor = parse_rational(need(j, "bound_factor", ""), "bound_factor");
  const auto& members = array_at(need(j, "members", ""), "members");
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto field = index("members", i);
    auto gens = parse_vectors(members[i], field, d);
    try {
      r.members.emplace_back(std::move(gens), false);
    } catch (const std::exception& e) {
      malformed(field, e.what());
    }
  }
  const auto& ledger = array_at(need(j, "ledger", ""), "ledger");
  for (std::size_t i = 0; i < ledger.size(); ++i) {
    const auto path = index("ledger", i);
    const auto& row = ledger[i];
    LedgerEntry e;
    e.point = parse_int_vector(need(row, "point", path), path + ".point", d);
    e.generation = parse_long(need(row, "generation", path), path + ".generation");
    const auto& parents = array_at(need(row, "parent_generations", path), path + ".parent_generations");
    for (std::size_t k = 0; k < parents.size(); ++k)
      e.parent_generations.push_back(parse_long(parents[k], index(path + ".parent_generations", k)));
    e.factor = parse_rational(need(row, "factor", path), path + ".factor");
    e.height = parse_rational(need(row, "height", path), path + ".height");
    r.ledger.push_back(std::move(e));
  }
  return r;
}

Json to_json(const VerificationReport& r) {
  Json j = header("report");
  j["verdict"] = to_string(r.verdict);
  j["failed_check"] = r.failed_check.empty() ? Json() : Json(r.failed_check);
  j["failed_member"] = r.failed_member ? Json(count_text(*r.failed_member)) : Json();
  j["claimed_factor"] = rational_text(r.claimed_factor);
  j["coverage_fraction"] = rational_text(r.coverage_fraction);
  j["depth_used"] = count_text(r.depth_used);
  j["cells_processed"] = count_text(r.cells_processed);
  j["witness"] = r.witness ? rat_vector_json(*r.witness) : Json();
  j["deepest_cell"] = rat_vectors_json(r.deepest_cell);
  Json checks = Json::array();
  for (const auto& m : r.member_checks) {
    Json row;
    row["unimodular"] = m.unimodular;
    row["inside"] = m.inside;
    row["bounded"] = m.bounded;
    checks.push_back(std::move(row));
  }
  j["member_checks"] = std::move(checks);
  return j;
}

VerificationReport report_from_json(const Json& j) {
  check_header(j, "report");
  VerificationReport r;
  r.verdict = parse_verdict(need(j, "verdict", ""), "verdict");
  const auto& failed_check = need(j, "failed_check", "");
  if (!failed_check.is_null()) r.failed_check = parse_string(failed_check, "failed_check");
  const auto& failed_member = need(j, "failed_member", "");
  if (!failed_member.is_null()) r.failed_member = parse_count(failed_member, "failed_member");
  r.claimed_factor = parse_rational(need(j, "claimed_factor", ""), "claimed_factor");
  r.coverage_fraction = parse_rational(need(j, "coverage_fraction", ""), "coverage_fraction");
  r.depth_used = parse_count(need(j, "depth_used", ""), "depth_used");
  r.cells_processed = parse_count(need(j, "cells_processed", ""), "cells_processed");
  const auto& witness = need(j, "witness", "");
  if (!witness.is_null()) r.witness = parse_rat_vector(witness, "witness", array_at(witness, "witness").size());
  const auto& cell = array_at(need(j, "deepest_cell", ""), "deepest_cell");
  if (!cell.empty()) r.deepest_cell = parse_rat_vectors(cell, "deepest_cell", array_at(cell[0], "deepest_cell[0]").size());
  const auto& checks = array_at(need(j, "member_checks", ""), "member_checks");
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const auto path = index("member_checks", i);
    MemberCheck m;
    m.unimodular = parse_bool(need(checks[i], "unimodular", path), path + ".unimodular");
    m.inside = parse_bool(need(checks[i], "inside", path), path + ".inside");
    m.bounded = parse_bool(need(checks[i], "bounded", path), path + ".bounded");
    r.member_checks.push_back(m);
  }
  return r;
}

Json to_json(const Triangulation& t) {
  Json j = header("triangulation");
  j["mode"] = t.mode;
  j["dim"] = count_text(t.dim);
  Json cells = Json::array();
  for (const auto& c : t.cells) cells.push_back(vectors_json(c));
  j["cells"] = std::move(cells);
  return j;
}

Triangulation triangulation_from_json(const Json& j) {
  check_header(j, "triangulation");
  Triangulation t;
  t.mode = parse_string(need(j, "mode", ""), "mode");
  if (t.mode != "cone" && t.mode != "polytope") malformed("mode", "expected \"cone\" or \"polytope\"");
  t.dim = parse_dim(j, "");
  t.cells = parse_vector_lists(need(j, "cells", ""), "cells", t.dim);
  return t;
}

Json to_json(const BoundsTable& t) {
  Json j = header("bounds-table");
  j["polytope_constant"] = long_text(kPolytopeBoundConstant);
  Json rows = Json::array();
  for (const auto& b : t.rows) {
    Json row;
    row["d"] = count_text(b.d);
    row["gamma"] = b.gamma.get_str();
    row["kappa"] = rational_text(b.kappa);
    row["pol_factor"] = b.pol_factor.get_str();
    row["pol_bound"] = rational_text(b.pol_bound);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

BoundsTable bounds_table_from_json(const Json& j) {
  check_header(j, "bounds-table");
  BoundsTable t;
  t.rows = parse_rows<BoundParams>(j, [](const Json& row, const std::string& path) {
    BoundParams b;
    b.d = parse_count(need(row, "d", path), path + ".d");
    b.gamma = parse_integer(need(row, "gamma", path), path + ".gamma");
    b.kappa = parse_rational(need(row, "kappa", path), path + ".kappa");
    b.pol_factor = parse_integer(need(row, "pol_factor", path), path + ".pol_factor");
    b.pol_bound = parse_rational(need(row, "pol_bound", path), path + ".pol_bound");
    return b;
  });
  return t;
}

Json to_json(const HSeqTable& t) {
  Json j = header("hseq-table");
  j["d"] = count_text(t.d);
  Json rows = Json::array();
  for (const auto& [k, h] : t.rows) {
    Json row;
    row["k"] = long_text(k);
    row["h"] = rational_text(h);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

HSeqTable hseq_table_from_json(const Json& j) {
  check_header(j, "hseq-table");
  HSeqTable t;
  t.d = parse_count(need(j, "d", ""), "d");
  t.rows = parse_rows<std::pair<long, Rational>>(j, [](const Json& row, const std::string& path) {
    return std::pair<long, Rational>(parse_long(need(row, "k", path), path + ".k"),
                                     parse_rational(need(row, "h", path), path + ".h"));
  });
  return t;
}

Json to_json(const ProbeTable& t) {
  Json j = header("probe-table");
  j["target"] = t.target;
  Json rows = Json::array();
  for (const auto& r : t.rows) {
    Json row;
    row["factor"] = r.factor.get_str();
    row["verdict"] = r.verdict;
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

ProbeTable probe_table_from_json(const Json& j) {
  check_header(j, "probe-table");
  ProbeTable t;
  t.target = parse_string(need(j, "target", ""), "target");
  t.rows = parse_rows<ProbeRow>(j, [](const Json& row, const std::string& path) {
    return ProbeRow{parse_integer(need(row, "factor", path), path + ".factor"),
                    parse_string(need(row, "verdict", path), path + ".verdict")};
  });
  return t;
}

Json to_json(const EnsembleSummary& s) {
  Json j = header("ensemble-summary");
  j["d"] = count_text(s.d);
  j["count"] = count_text(s.count);
  j["seed"] = std::to_string(s.seed);
  j["max_entry"] = long_text(s.max_entry);
  j["passed"] = count_text(s.passed);
  j["failed"] = count_text(s.failed);
  j["inconclusive"] = count_text(s.inconclusive);
  Json rows = Json::array();
  for (const auto& item : s.items) {
    Json row;
    row["generators"] = vectors_json(item.generators);
    row["multiplicity"] = item.multiplicity.get_str();
    row["empty"] = item.empty;
    row["members"] = count_text(item.members);
    row["max_height"] = rational_text(item.max_height);
    row["verdict"] = to_string(item.verdict);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j;
}

EnsembleSummary ensemble_from_json(const Json& j) {
  check_header(j, "ensemble-summary");
  EnsembleSummary s;
  s.d = parse_count(need(j, "d", ""), "d");
  s.count = parse_count(need(j, "count", ""), "count");
  const Integer seed = parse_integer(need(j, "seed", ""), "seed");
  if (seed < 0 || !seed.fits_ulong_p()) malformed("seed", "expected a 64-bit unsigned integer");
  s.seed = seed.get_ui();
  s.max_entry = parse_long(need(j, "max_entry", ""), "max_entry");
  s.passed = parse_count(need(j, "passed", ""), "passed");
  s.failed = parse_count(need(j, "failed", ""), "failed");
  s.inconclusive = parse_count(need(j, "inconclusive", ""), "inconclusive");
  const std::size_t d = s.d;
  s.items = parse_rows<EnsembleItem>(j, [d](const Json& row, const std::string& path) {
    EnsembleItem item;
    item.generators = parse_vectors(need(row, "generators", path), path + ".generators", d);
    item.multiplicity = parse_integer(need(row, "multiplicity", path), path + ".multiplicity");
    item.empty = parse_bool(need(row, "empty", path), path + ".empty");
    item.members = parse_count(need(row, "members", path), path + ".members");
    item.max_height = parse_rational(need(row, "max_height", path), path + ".max_height");
    item.verdict = parse_verdict(need(row, "verdict", path), path + ".verdict");
    return item;
  });
  return s;
}

std::string to_tsv(const BoundsTable& t) {
  std::ostringstream out;
  out << "d\tgamma\tkappa\tpol_factor\tpol_bound\n";
  for (const auto& b : t.rows)
    out << b.d << '\t' << b.gamma << '\t' << rational_text(b.kappa) << '\t' << b.pol_factor << '\t'
        << rational_text(b.pol_bound) << '\n';
  return out.str();
}

std::string to_tsv(const HSeqTable& t) {
  std::ostringstream out;
  out << "d\tk\th\n";
  for (const auto& [k, h] : t.rows) out << t.d << '\t' << k << '\t' << rational_text(h) << '\n';
  return out.str();
}

std::string to_tsv(const ProbeTable& t) {
  std::ostringstream out;
  out << "factor\tverdict\n";
  for (const auto& r : t.rows) out << r.factor << '\t' << r.verdict << '\n';
  return out.str();
}

std::string to_tsv(const EnsembleSummary& s) {
  std::ostringstream out;
  out << "index\tgenerators\tmultiplicity\tempty\tmembers\tmax_height\tverdict\n";
  for (std::size_t i = 0; i < s.items.size(); ++i) {
    const auto& item = s.items[i];
    std::string gens;
    for (const auto& g : item.generators) gens += (gens.empty() ? "" : " ") + to_string(g);
    out << i << '\t' << gens << '\t' << item.multiplicity << '\t' << (item.empty ? "yes" : "no") << '\t'
        << item.members << '\t' << rational_text(item.max_height) << '\t' << to_string(item.verdict) << '\n';
  }
  return out.str();
}

}  // namespace unicover
