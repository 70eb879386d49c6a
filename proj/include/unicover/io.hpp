#pragma once

// JSON documents. Every number is written as a decimal string ("12", "-3",
// "7/4"); counts such as "dim" are also read from plain JSON integers.

#include "unicover/cover.hpp"
#include "unicover/hilbert.hpp"
#include "unicover/resolve.hpp"
#include "unicover/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace unicover {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFormatVersion = "1";

/// Malformed document; the message starts with the offending field path.
class FormatError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

std::string rational_text(const Rational& q);
Rational parse_rational(const Json& j, const std::string& field);
Integer parse_integer(const Json& j, const std::string& field);
std::size_t parse_count(const Json& j, const std::string& field);

/// Kind of a document ("cone", "polytope", "cone-cover", ...).
std::string document_kind(const Json& j);

Json to_json(const Cone& c);
Cone cone_from_json(const Json& j);

Json to_json(const LatticePolytope& p);
LatticePolytope polytope_from_json(const Json& j);

Json to_json(const CoverCertificate& cert);
CoverCertificate certificate_from_json(const Json& j);

Json to_json(const HilbertBasis& hb);
HilbertBasis hilbert_basis_from_json(const Json& j);

Json to_json(const Resolution& r);
Resolution resolution_from_json(const Json& j);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

/// Empty pieces of a cone (generator lists) or a polytope (vertex lists).
struct Triangulation {
  std::string mode;  // "cone" or "polytope"
  std::size_t dim = 0;
  std::vector<std::vector<IntVector>> cells;
};
Json to_json(const Triangulation& t);
Triangulation triangulation_from_json(const Json& j);

struct BoundsTable {
  std::vector<BoundParams> rows;
};
Json to_json(const BoundsTable& t);
BoundsTable bounds_table_from_json(const Json& j);

struct HSeqTable {
  std::size_t d = 2;
  std::vector<std::pair<long, Rational>> rows;  // (k, h_k)
};
Json to_json(const HSeqTable& t);
HSeqTable hseq_table_from_json(const Json& j);

struct ProbeTable {
  std::string target;  // "cone" or "polytope"
  std::vector<ProbeRow> rows;
};
Json to_json(const ProbeTable& t);
ProbeTable probe_table_from_json(const Json& j);

struct EnsembleItem {
  std::vector<IntVector> generators;
  Integer multiplicity;
  bool empty = false;
  std::size_t members = 0;
  Rational max_height;  // largest member generator height over Delta_C
  Verdict verdict = Verdict::fail;
};

struct EnsembleSummary {
  std::size_t d = 2;
  std::size_t count = 0;
  std::uint64_t seed = 0;
  long max_entry = 1;
  std::vector<EnsembleItem> items;
  std::size_t passed = 0, failed = 0, inconclusive = 0;
};
Json to_json(const EnsembleSummary& s);
EnsembleSummary ensemble_from_json(const Json& j);

/// Tab-separated rendering of the table documents, header line first.
std::string to_tsv(const BoundsTable& t);
std::string to_tsv(const HSeqTable& t);
std::string to_tsv(const ProbeTable& t);
std::string to_tsv(const EnsembleSummary& s);

}  // namespace unicover
