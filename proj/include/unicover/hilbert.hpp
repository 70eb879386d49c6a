#pragma once

// Hilbert bases of pointed rational cones.

#include "unicover/geom.hpp"

#include <vector>

namespace unicover {

struct HilbertBasis {
  std::vector<IntVector> elements;         // lexicographically sorted
  std::vector<IntVector> cone_generators;  // extreme generators of the cone
};

/// Generators plus nonzero box points, reduced to the irreducible elements.
HilbertBasis hilbert_basis_simplicial(const SimplicialCone& c);

/// Union of the simplicial bases over a triangulation, reduced again.
/// Lower-dimensional cones are handled inside their linear span.
HilbertBasis hilbert_basis(const Cone& c);

/// Every element lies in factor * base.
bool check_hilbert_containment(const HilbertBasis& hb, const LatticeSimplex& base, const Rational& factor);
/// Same with the reference region factor * conv(O, extreme generators of c).
bool check_hilbert_containment(const std::vector<IntVector>& elements, const Cone& c, const Rational& factor);

}  // namespace unicover
