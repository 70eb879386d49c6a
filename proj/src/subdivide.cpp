#include "unicover/subdivide.hpp"

#include <algorithm>
#include <map>

namespace unicover {

namespace {

std::vector<IntVector> sorted(std::vector<IntVector> v) {
  std::sort(v.begin(), v.end());
  return v;
}

bool in_simplicial(const std::vector<IntVector>& gens, const IntVector& x) {
  return SimplicialCone(gens, false).contains(x);
}

// Boundary facets of a set of simplicial cones: (facet, opposite generator).
std::vector<std::pair<std::vector<IntVector>, IntVector>> boundary_facets(
    const std::vector<std::vector<IntVector>>& cells) {
  std::map<std::vector<IntVector>, std::pair<int, IntVector>> count;
  for (const auto& cell : cells) {
    for (std::size_t skip = 0; skip < cell.size(); ++skip) {
      std::vector<IntVector> facet;
      for (std::size_t i = 0; i < cell.size(); ++i)
        if (i != skip) facet.push_back(cell[i]);
      facet = sorted(std::move(facet));
      auto [it, inserted] = count.try_emplace(facet, 0, cell[skip]);
      ++it->second.first;
    }
  }
  std::vector<std::pair<std::vector<IntVector>, IntVector>> out;
  for (auto& [facet, info] : count)
    if (info.first == 1) out.emplace_back(facet, info.second);
  return out;
}

}  // namespace

std::vector<std::vector<IntVector>> placing_triangulation(const std::vector<IntVector>& points) {
  if (points.empty()) throw DomainError("placing_triangulation: no points");
  const std::size_t n = points.front().size();
  std::vector<IntVector> start;
  std::vector<bool> used(points.size(), false);
  for (std::size_t i = 0; i < points.size() && start.size() < n; ++i) {
    auto trial = start;
    trial.push_back(points[i]);
    if (rank(std::span<const IntVector>(trial)) == trial.size()) {
      start = std::move(trial);
      used[i] = true;
    }
  }
  if (start.size() != n) throw DomainError("placing_triangulation: points do not span the space");

  std::vector<std::vector<IntVector>> cells{sorted(start)};
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (used[i]) continue;
    const IntVector& p = points[i];
    bool inside = false;
    for (const auto& cell : cells)
      if (in_simplicial(cell, p)) {
        inside = true;
        break;
      }
    if (inside) {
      std::vector<std::vector<IntVector>> next;
      const IntVector w = primitive_vector(p);
      for (const auto& cell : cells) {
        SimplicialCone sc(cell, false);
        if (!sc.contains(p) || std::find(cell.begin(), cell.end(), w) != cell.end()) {
          next.push_back(cell);
          continue;
        }
        for (const auto& child : stellar_subdivision(sc, p)) next.push_back(child.sorted_generators());
      }
      cells = std::move(next);
      continue;
    }
    std::vector<std::vector<IntVector>> added;
    for (const auto& [facet, opposite] : boundary_facets(cells)) {
      const IntVector normal = hyperplane_normal(facet);
      const Integer side = dot(normal, opposite);
      const Integer at = dot(normal, p);
      if (sgn(side) * sgn(at) < 0) {
        auto cell = facet;
        cell.push_back(primitive_vector(p));
        added.push_back(sorted(std::move(cell)));
      }
    }
    if (added.empty()) throw DomainError("placing_triangulation: cone is not pointed");
    for (auto& a : added) cells.push_back(std::move(a));
  }
  std::sort(cells.begin(), cells.end());
  return cells;
}

Fan triangulate_cone(const Cone& c) {
  if (!c.full_dimensional()) throw DomainError("triangulate_cone: cone is not full-dimensional");
  Fan fan;
  for (const auto& cell : placing_triangulation(c.generators())) fan.members.emplace_back(cell);
  return fan;
}

std::vector<SimplicialCone> stellar_subdivision(const SimplicialCone& c, const IntVector& w) {
  if (w.size() != c.dim()) throw PreconditionError("stellar_subdivision: dimension mismatch");
  if (is_zero(w)) throw PreconditionError("stellar_subdivision: zero vector");
  const RatVector xi = c.coefficients(w);
  std::size_t positive = 0;
  for (const auto& q : xi) {
    if (q < 0) throw PreconditionError("stellar_subdivision: vector outside the cone");
    if (q > 0) ++positive;
  }
  if (positive < 2) throw PreconditionError("stellar_subdivision: vector on an extreme ray");
  const IntVector pw = primitive_vector(w);
  std::vector<SimplicialCone> out;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    if (xi[i] == 0) continue;
    auto gens = c.generators();
    gens[i] = pw;
    out.emplace_back(std::move(gens));
  }
  return out;
}

Fan refine_to_empty(const SimplicialCone& c) {
  Fan fan;
  struct Item {
    SimplicialCone cone;
    std::size_t depth;
  };
  std::vector<Item> work{{c, 0}};
  while (!work.empty()) {
    Item item = std::move(work.back());
    work.pop_back();
    const auto points = lattice_points(base_simplex(item.cone));
    std::optional<IntVector> best;
    Rational best_height;
    for (const auto& p : points) {
      if (is_zero(p)) continue;
      if (std::find(item.cone.generators().begin(), item.cone.generators().end(), p) !=
          item.cone.generators().end())
        continue;
      const Rational h = item.cone.height(to_rational(p));
      if (!best || h < best_height || (h == best_height && p < *best)) {
        best = p;
        best_height = h;
      }
    }
    if (!best) {
      fan.members.push_back(std::move(item.cone));
      continue;
    }
    auto children = stellar_subdivision(item.cone, *best);
    fan.provenance.push_back({item.cone.generators(), primitive_vector(*best), item.depth, children.size()});
    for (auto& ch : children) work.push_back({std::move(ch), item.depth + 1});
  }
  std::sort(fan.members.begin(), fan.members.end(), [](const SimplicialCone& a, const SimplicialCone& b) {
    return a.sorted_generators() < b.sorted_generators();
  });
  return fan;
}

Rational cross_section_volume(const SimplicialCone& member, const SimplicialCone& reference) {
  Rational v(member.multiplicity());
  for (const auto& g : member.generators()) {
    const Rational h = reference.height(to_rational(g));
    if (h <= 0) throw DomainError("cross_section_volume: member not inside the reference cone");
    v /= h;
  }
  return v;
}

std::vector<IntVector> polytope_lattice_points(const LatticePolytope& p) {
  std::vector<IntVector> lifted;
  for (const auto& v : p.vertices()) {
    IntVector h = v;
    h.push_back(1);
    lifted.push_back(std::move(h));
  }
  std::vector<IntVector> out;
  if (!p.full_dimensional()) throw DomainError("polytope_lattice_points: polytope is not full-dimensional");
  for (const auto& cell : placing_triangulation(lifted)) {
    std::vector<IntVector> verts;
    for (auto v : cell) {
      v.pop_back();
      verts.push_back(std::move(v));
    }
    for (auto& q : lattice_points(LatticeSimplex::from_integer(verts))) out.push_back(std::move(q));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<LatticeSimplex> triangulate_polytope_empty(const LatticePolytope& p) {
  if (!p.full_dimensional()) throw DomainError("triangulate_polytope_empty: polytope is not full-dimensional");
  std::vector<IntVector> lifted;
  for (auto q : polytope_lattice_points(p)) {
    q.push_back(1);
    lifted.push_back(std::move(q));
  }
  std::vector<LatticeSimplex> out;
  for (const auto& cell : placing_triangulation(lifted)) {
    std::vector<IntVector> verts;
    for (auto v : cell) {
      v.pop_back();
      verts.push_back(std::move(v));
    }
    out.push_back(LatticeSimplex::from_integer(verts));
  }
  return out;
}

}  // namespace unicover
