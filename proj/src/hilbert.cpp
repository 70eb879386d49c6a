#include "unicover/hilbert.hpp"

#include "unicover/subdivide.hpp"

#include <algorithm>

namespace unicover {

namespace {

// Keeps the candidates x for which no other candidate y satisfies x - y in the
// cone. Candidates must contain the whole Hilbert basis; then x - y in the cone
// for some y != x is exactly reducibility. The cone is given as a union of
// simplicial cones.
std::vector<IntVector> reduce(std::vector<IntVector> candidates, const std::vector<SimplicialCone>& pieces) {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  auto in_cone = [&](const IntVector& x) {
    return std::any_of(pieces.begin(), pieces.end(), [&](const SimplicialCone& p) { return p.contains(x); });
  };

  std::vector<IntVector> basis;
  if (pieces.size() == 1) {
    // the height is positive on the cone, so a reducible x dominates some
    // basis element of strictly smaller height
    std::vector<std::pair<Rational, IntVector>> by_height;
    for (auto& x : candidates) by_height.emplace_back(pieces.front().height(to_rational(x)), std::move(x));
    std::sort(by_height.begin(), by_height.end());
    for (auto& [h, x] : by_height) {
      const bool reducible =
          std::any_of(basis.begin(), basis.end(), [&](const IntVector& b) { return in_cone(x - b); });
      if (!reducible) basis.push_back(std::move(x));
    }
  } else {
    for (const auto& x : candidates) {
      bool reducible = false;
      for (const auto& y : candidates)
        if (y != x && in_cone(x - y)) {
          reducible = true;
          break;
        }
      if (!reducible) basis.push_back(x);
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

}  // namespace

HilbertBasis hilbert_basis_simplicial(const SimplicialCone& c) {
  std::vector<IntVector> candidates = c.generators();
  for (auto& p : lattice_points_in_box(c.generators()))
    if (!is_zero(p)) candidates.push_back(std::move(p));
  HilbertBasis hb;
  hb.cone_generators = c.sorted_generators();
  hb.elements = reduce(std::move(candidates), {c});
  return hb;
}

HilbertBasis hilbert_basis(const Cone& c) {
  HilbertBasis hb;
  hb.cone_generators = c.generators();
  if (!c.full_dimensional()) {
    // work in coordinates of a basis of Z^n intersected with the span
    const auto basis = saturated_basis(c.generators());
    std::vector<RatVector> basis_q;
    for (const auto& b : basis) basis_q.push_back(to_rational(b));
    std::vector<IntVector> local;
    for (const auto& g : c.generators()) {
      auto coords = solve_in_columns(std::span<const RatVector>(basis_q), to_rational(g));
      if (!coords) throw DomainError("hilbert_basis: generator outside its own span");
      local.push_back(to_integer(*coords));
    }
    const HilbertBasis inner = hilbert_basis(Cone(basis.size(), local));
    for (const auto& e : inner.elements) {
      IntVector x(c.dim(), Integer(0));
      for (std::size_t k = 0; k < basis.size(); ++k) x = x + e[k] * basis[k];
      hb.elements.push_back(std::move(x));
    }
    std::sort(hb.elements.begin(), hb.elements.end());
    return hb;
  }
  const Fan fan = triangulate_cone(c);
  if (fan.members.size() == 1) return hilbert_basis_simplicial(fan.members.front());
  std::vector<IntVector> candidates;
  for (const auto& m : fan.members)
    for (auto& e : hilbert_basis_simplicial(m).elements) candidates.push_back(std::move(e));
  hb.elements = reduce(std::move(candidates), fan.members);
  return hb;
}

bool check_hilbert_containment(const HilbertBasis& hb, const LatticeSimplex& base, const Rational& factor) {
  return std::all_of(hb.elements.begin(), hb.elements.end(),
                     [&](const IntVector& x) { return base.contains(to_rational(x), factor); });
}

bool check_hilbert_containment(const std::vector<IntVector>& elements, const Cone& c, const Rational& factor) {
  for (const auto& x : elements) {
    auto h = min_height(c.generators(), to_rational(x));
    if (!h || *h > factor) return false;
  }
  return true;
}

}  // namespace unicover
