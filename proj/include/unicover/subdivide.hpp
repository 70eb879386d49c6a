#pragma once

// Triangulations and stellar subdivisions of cones and lattice polytopes.

#include "unicover/geom.hpp"

#include <vector>

namespace unicover {

/// One stellar subdivision step.
struct SubdivisionEvent {
  std::vector<IntVector> parent;  // generators of the subdivided cone
  IntVector point;                // primitive subdivision vector
  std::size_t depth = 0;          // 0 for subdivisions of the input itself
  std::size_t children = 0;
};

/// Simplicial cones with pairwise disjoint interiors whose union is the input.
struct Fan {
  std::vector<SimplicialCone> members;
  std::vector<SubdivisionEvent> provenance;
};

/// Placing triangulation of a full-dimensional cone using its extreme
/// generators in lexicographic order.
Fan triangulate_cone(const Cone& c);

/// Placing triangulation of the cone spanned by the given vectors, using all of
/// them (not only the extreme ones) in the given order. Vectors lying inside
/// the current union are inserted by stellar subdivision. The vectors must
/// span R^n and generate a pointed cone.
std::vector<std::vector<IntVector>> placing_triangulation(const std::vector<IntVector>& points);

/// Children of the stellar subdivision of c at w: one cone per generator with
/// positive coefficient, that generator replaced by primitive(w).
/// Throws PreconditionError when w is zero, outside c or on an extreme ray.
std::vector<SimplicialCone> stellar_subdivision(const SimplicialCone& c, const IntVector& w);

/// Repeated stellar subdivision at non-vertex lattice points of the base
/// simplex until every member is empty.
Fan refine_to_empty(const SimplicialCone& c);

/// All lattice points of a lattice polytope, sorted.
std::vector<IntVector> polytope_lattice_points(const LatticePolytope& p);

/// Triangulation into empty lattice simplices (placing on all lattice points).
std::vector<LatticeSimplex> triangulate_polytope_empty(const LatticePolytope& p);

/// Normalized volume of the cross-section of member by the hyperplane on which
/// the reference height is 1: |det| of the member generators rescaled to that
/// hyperplane. Summing over a subdivision of reference gives its multiplicity.
Rational cross_section_volume(const SimplicialCone& member, const SimplicialCone& reference);

}  // namespace unicover
