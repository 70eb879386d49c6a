#include "unicover/resolve.hpp"

#include "unicover/hilbert.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace unicover {

std::vector<Rational> h_sequence(std::size_t d, long kmax) {
  if (d < 2) throw DomainError("h_sequence: d must be at least 2");
  const long first = -static_cast<long>(d) + 2;
  std::vector<Rational> h;
  for (long k = first; k <= kmax; ++k) {
    if (k <= 1) {
      h.emplace_back(1);
    } else if (k == 2) {
      h.emplace_back(fraction(static_cast<long>(d), 2));
    } else {
      Rational s = 0;
      const std::size_t idx = h.size();
      for (std::size_t j = 1; j <= d; ++j) s += h[idx - j];
      h.push_back(s / 2);
    }
  }
  return h;
}

Rational h_value(std::size_t d, long k) {
  if (d < 2) throw DomainError("h_value: d must be at least 2");
  if (k <= 1) return 1;
  return h_sequence(d, k).back();
}

Rational resolution_bound(std::size_t d, const Integer& multiplicity) {
  return fraction(static_cast<long>(d), 2) * pow(fraction(3, 2), multiplicity.get_si() - 2);
}

namespace {

struct Node {
  SimplicialCone cone;
  std::vector<long> gen;
};

bool sort_members(const SimplicialCone& a, const SimplicialCone& b) {
  return a.sorted_generators() < b.sorted_generators();
}

Resolution resolve_plane(const SimplicialCone& c) {
  Resolution r;
  r.input = c.generators();
  r.bound_factor = 1;
  const auto hb = hilbert_basis_simplicial(c).elements;
  auto elems = hb;
  const Integer orient = c.determinant();
  std::sort(elems.begin(), elems.end(), [&](const IntVector& x, const IntVector& y) {
    if (x == y) return false;
    const Integer det = x[0] * y[1] - x[1] * y[0];
    return sgn(det) * sgn(orient) > 0;
  });
  for (std::size_t i = 0; i + 1 < elems.size(); ++i) r.members.emplace_back(std::vector<IntVector>{elems[i], elems[i + 1]});
  for (const auto& e : elems) {
    if (std::find(r.input.begin(), r.input.end(), e) != r.input.end()) continue;
    LedgerEntry le;
    le.point = e;
    le.generation = 2;
    le.parent_generations = {1, 0};
    le.height = c.height(to_rational(e));
    le.factor = le.height;
    r.ledger.push_back(std::move(le));
  }
  r.generations = elems.size() > 2 ? 2 : 1;
  std::sort(r.members.begin(), r.members.end(), sort_members);
  return r;
}

}  // namespace

Resolution resolve_cone(const SimplicialCone& c) {
  const std::size_t d = c.dim();
  if (d == 1) {
    Resolution r;
    r.input = c.generators();
    r.members = {c};
    r.bound_factor = 1;
    return r;
  }
  if (d == 2) return resolve_plane(c);

  Resolution r;
  r.input = c.generators();
  const Integer mu = c.multiplicity();
  r.bound_factor = resolution_bound(d, mu);
  if (c.unimodular()) {
    r.members = {c};
    return r;
  }

  const long first = -static_cast<long>(d) + 2;
  const auto h = h_sequence(d, mu.get_si() + 2);
  auto hk = [&](long k) -> const Rational& { return h[static_cast<std::size_t>(k - first)]; };

  std::vector<Node> current;
  {
    Node root{SimplicialCone(c.generators(), false), {}};
    for (std::size_t i = 0; i < d; ++i) root.gen.push_back(1 - static_cast<long>(i));
    current.push_back(std::move(root));
  }

  long k = 2;
  while (!current.empty()) {
    std::vector<bool> handled(current.size(), false);
    std::vector<Node> next;
    for (std::size_t idx = 0; idx < current.size(); ++idx) {
      if (handled[idx]) continue;
      const Node& x = current[idx];

      std::optional<IntVector> best;
      Rational best_factor;
      for (const auto& bp : box_points_with_coefficients(x.cone.generators())) {
        if (is_zero(bp.point)) continue;
        Rational weight = 0, total = 0;
        IntVector support_sum(d, Integer(0));
        for (std::size_t j = 0; j < d; ++j) {
          if (bp.coefficients[j] == 0) continue;
          weight += bp.coefficients[j] * hk(x.gen[j]);
          total += hk(x.gen[j]);
          support_sum = support_sum + x.cone.generator(j);
        }
        IntVector point = bp.point;
        Rational factor = weight;
        if (total - weight < weight) {
          point = support_sum - bp.point;
          factor = total - weight;
        }
        const Integer g = gcd_of(point);
        if (g != 1) {
          point = primitive_vector(point);
          factor /= g;
        }
        if (!best || factor < best_factor || (factor == best_factor && point < *best)) {
          best = std::move(point);
          best_factor = factor;
        }
      }
      if (!best) throw std::logic_error("resolve_cone: non-unimodular cone without box points");
      if (best_factor > hk(k)) throw std::logic_error("resolve_cone: subdivision vector exceeds its height budget");

      LedgerEntry le;
      le.point = *best;
      le.generation = k;
      le.parent_generations = x.gen;
      le.factor = best_factor;
      le.height = c.height(to_rational(*best));
      if (le.height > le.factor) throw std::logic_error("resolve_cone: ledger height above certified factor");
      r.ledger.push_back(le);

      for (std::size_t j = idx; j < current.size(); ++j) {
        if (handled[j]) continue;
        const Node& y = current[j];
        const RatVector xi = y.cone.coefficients(*best);
        bool box = true, nonzero = false;
        for (const auto& q : xi) {
          if (q < 0 || q >= 1) box = false;
          if (q > 0) nonzero = true;
        }
        if (!box || !nonzero) continue;
        handled[j] = true;
        for (std::size_t i = 0; i < d; ++i) {
          if (xi[i] == 0) continue;
          auto gens = y.cone.generators();
          auto gen = y.gen;
          gens[i] = *best;
          gen[i] = k;
          Node child{SimplicialCone(std::move(gens), false), std::move(gen)};
          if (child.cone.multiplicity() >= y.cone.multiplicity())
            throw std::logic_error("resolve_cone: multiplicity did not decrease");
          if (child.cone.unimodular())
            r.members.push_back(SimplicialCone(child.cone.generators()));
          else
            next.push_back(std::move(child));
        }
      }
    }
    current = std::move(next);
    r.generations = k;
    ++k;
  }
  if (r.generations > mu) throw std::logic_error("resolve_cone: generation count exceeds the multiplicity");
  std::sort(r.members.begin(), r.members.end(), sort_members);
  return r;
}

}  // namespace unicover
