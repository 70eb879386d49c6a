#pragma once

// Unimodular covers: corner covers, covers of cones with bounded Hilbert
// bases, covers of polytope multiples, and the closed-form bounds.

#include "unicover/geom.hpp"

#include <optional>
#include <vector>

namespace unicover {

struct BoundParams {
  std::size_t d = 0;
  Integer gamma;       // ceil(sqrt(d-1)) (d-1)
  Rational kappa;      // gamma d(d+1)/2 (3/2)^(gamma-2)
  Integer pol_factor;  // least integer c'' with c''^2 >= d (d+1)^2
  Rational pol_bound;  // pol_factor * kappa
};

/// Throws DomainError for d < 2.
BoundParams cone_cover_bounds(std::size_t d);

/// The constant C in pol_bound(d) <= C d^5 (3/2)^gamma(d).
inline constexpr long kPolytopeBoundConstant = 2;

struct CornerCover {
  SimplicialCone cone;
  IntVector vertex;                     // the distinguished generator v1
  std::vector<SimplicialCone> members;  // unimodular, each has v1 as a generator
  Rational eta;                         // v1 + eta * conv(O, v_i - v1) lies in the union
  Rational containment_factor;          // member generators lie in this multiple of Delta_C
};

/// Cover of a neighborhood of the generator vertex_index: project along v1,
/// cover the image cone in one dimension less, lift the generators so their
/// v1-coefficient lies in [0, 1).
CornerCover corner_cover(const SimplicialCone& c, std::size_t vertex_index);

enum class CertificateKind { cone_cover, polytope_cover };

/// A claimed cover. Members are raw generator lists (cone mode) or vertex
/// lists (polytope mode); nothing about them is trusted until verified.
struct CoverCertificate {
  CertificateKind kind = CertificateKind::cone_cover;
  std::size_t dim = 0;
  std::optional<Cone> cone;               // cone mode
  std::optional<LatticePolytope> polytope;  // polytope mode
  Integer multiple = 1;                   // polytope mode: the dilation c
  std::vector<std::vector<IntVector>> members;
  Rational claimed_factor;
};

/// Unimodular cones covering c with every generator in kappa(d) * Delta_C
/// (or the override, which is recorded but not checked here).
CoverCertificate cover_cone(const Cone& c, const std::optional<Rational>& factor_override = std::nullopt);

/// Members of a unimodular cover of c, for any dimension >= 1.
std::vector<SimplicialCone> cone_cover_members(const Cone& c);

/// Refusal of cover_polytope_multiple; carries the least admissible multiple.
class MultipleNotAdmissible : public PreconditionError {
 public:
  MultipleNotAdmissible(const std::string& what, Integer minimal)
      : PreconditionError(what), minimal_(std::move(minimal)) {}
  const Integer& minimal_multiple() const { return minimal_; }

 private:
  Integer minimal_;
};

/// Inner factor c' of the corner covers of the empty triangulation of p
/// (least integer such that every corner member generator lies in
/// c' (Delta - v)); 1 in dimension <= 2.
Integer polytope_inner_factor(const LatticePolytope& p);

/// Unimodular simplices covering c * p. Requires c = c' c'' with c''^2 >= d (d+1)^2.
CoverCertificate cover_polytope_multiple(const LatticePolytope& p, const Integer& c);

struct ProbeRow {
  Integer factor;
  std::string verdict;  // "pass", "fail", "inconclusive" or "refused"
};

std::vector<ProbeRow> probe_minimal_factor(const Cone& c, long first, long last, std::size_t max_depth = 40);
std::vector<ProbeRow> probe_minimal_factor(const LatticePolytope& p, long first, long last,
                                           std::size_t max_depth = 40);

}  // namespace unicover
