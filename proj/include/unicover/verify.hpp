#pragma once

// Independent checking of cover certificates: unimodularity, containment,
// generator heights and exact coverage of the target region.

#include "unicover/cover.hpp"

#include <optional>
#include <string>
#include <vector>

namespace unicover {

/// Malformed certificate (wrong shapes, missing input descriptor).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Verdict { pass, fail, inconclusive };

std::string to_string(Verdict v);

struct MemberCheck {
  bool unimodular = false;
  bool inside = false;   // every generator (vertex) lies in the region
  bool bounded = true;   // cone mode: every generator within claimed_factor * Delta_C
};

struct VerificationReport {
  Verdict verdict = Verdict::fail;
  std::string failed_check;  // "unimodular", "containment", "factor" or "coverage"
  std::optional<std::size_t> failed_member;
  std::vector<MemberCheck> member_checks;
  // coverage: a point of the region in no member; unimodular: a nonzero
  // lattice point of the member's half-open parallelepiped (absent when the
  // member is degenerate); containment and factor: the offending vector
  std::optional<RatVector> witness;
  std::vector<RatVector> deepest_cell;  // an unresolved cell when inconclusive
  std::size_t depth_used = 0;
  std::size_t cells_processed = 0;
  Rational coverage_fraction = 0;  // discharged share of the region volume
  Rational claimed_factor = 0;
};

inline constexpr std::size_t kDefaultMaxDepth = 40;

/// Member predicates in order, then coverage: cells of a triangulation of the
/// region are discharged when one member contains all their vertices and are
/// otherwise cut by a facet hyperplane of a member containing their barycenter.
/// Throws StructuralError on malformed input.
VerificationReport verify_cover(const CoverCertificate& cert, std::size_t max_depth = kDefaultMaxDepth);

/// Volume share of the region discharged by the coverage search, using every
/// non-degenerate member regardless of the member predicates.
Rational coverage_lower_bound(const CoverCertificate& cert, std::size_t max_depth = kDefaultMaxDepth);

/// Coverage search alone: whether the union of the cones in `members` contains
/// every cone of `region` (all full-dimensional in the same R^d).
Verdict union_covers(const std::vector<SimplicialCone>& region, const std::vector<SimplicialCone>& members,
                     std::size_t max_depth = kDefaultMaxDepth);

/// Whether some member of the certificate contains p (a point of the region;
/// cone mode: any point of R^d, polytope mode: a point of R^d in c P).
bool certificate_covers(const CoverCertificate& cert, const RatVector& p);

}  // namespace unicover
