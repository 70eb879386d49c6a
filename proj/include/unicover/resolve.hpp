#pragma once

// Resolution of simplicial cones into unimodular cones with controlled
// generator heights.

#include "unicover/geom.hpp"

#include <vector>

namespace unicover {

/// h_k = 1 for k <= 1, h_2 = d/2, h_k = (h_{k-1} + ... + h_{k-d}) / 2 for k >= 3.
Rational h_value(std::size_t d, long k);

/// h_k for k = -(d-2), ..., kmax.
std::vector<Rational> h_sequence(std::size_t d, long kmax);

/// (d/2) (3/2)^(mu-2).
Rational resolution_bound(std::size_t d, const Integer& multiplicity);

struct LedgerEntry {
  IntVector point;                   // the subdivision vector
  long generation = 0;               // k: it subdivides generation k-1 cones
  std::vector<long> parent_generations;  // generation indices of the originating cone
  Rational factor;                   // certified: point lies in factor * Delta_C
  Rational height;                   // actual height over Delta_C
};

struct Resolution {
  std::vector<IntVector> input;        // generators of the input cone
  std::vector<SimplicialCone> members;  // unimodular, canonical order
  std::vector<LedgerEntry> ledger;
  long generations = 1;                // g: all generation g cones are unimodular
  Rational bound_factor;
};

/// Stellar subdivision in rounds. In round k every non-unimodular cone of
/// generation k-1 is subdivided at a box point (or its complement within the
/// box) chosen to minimize the height budget sum xi_j h_{t_j}; each chosen
/// vector also subdivides every other cone of the round in whose box it lies.
/// Dimension 2 uses consecutive Hilbert basis elements instead.
Resolution resolve_cone(const SimplicialCone& c);

}  // namespace unicover
