#include "unicover/cover.hpp"

#include "unicover/resolve.hpp"
#include "unicover/subdivide.hpp"
#include "unicover/verify.hpp"
#include "unicover/weyl.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace unicover {

BoundParams cone_cover_bounds(std::size_t d) {
  if (d < 2) throw DomainError("cone_cover_bounds: d must be at least 2");
  const long n = static_cast<long>(d);
  BoundParams b;
  b.d = d;
  b.gamma = ceil_sqrt(Rational(n - 1)) * (n - 1);
  b.kappa = Rational(b.gamma) * fraction(n * (n + 1), 2) * pow(fraction(3, 2), b.gamma.get_si() - 2);
  b.pol_factor = ceil_sqrt(Rational(n * (n + 1) * (n + 1)));
  b.pol_bound = Rational(b.pol_factor) * b.kappa;
  return b;
}

namespace {

// Factor achieved by cone_cover_members in dimension d.
Rational cone_factor(std::size_t d) { return d <= 2 ? Rational(1) : cone_cover_bounds(d).kappa; }

// lambda with lambda . v = 1 for primitive v.
IntVector bezout(const IntVector& v) {
  IntVector lambda(v.size(), Integer(0));
  Integer g = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    Integer next, s, t;
    mpz_gcdext(next.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), v[k].get_mpz_t());
    for (std::size_t j = 0; j < k; ++j) lambda[j] *= s;
    lambda[k] = t;
    g = next;
  }
  if (g != 1) throw DomainError("bezout: vector is not primitive");
  return lambda;
}

std::vector<SimplicialCone> canonical_members(std::vector<SimplicialCone> members) {
  std::sort(members.begin(), members.end(),
            [](const SimplicialCone& a, const SimplicialCone& b) { return a.sorted_generators() < b.sorted_generators(); });
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return members;
}

// Drops members covered by the union of the others, tallest first. Members
// lie in `piece`; overlap candidates are found by cross-section bounding boxes.
std::vector<SimplicialCone> prune_redundant(const SimplicialCone& piece, std::vector<SimplicialCone> members) {
  const std::size_t n = members.size();
  const std::size_t d = piece.dim();
  std::vector<std::vector<std::pair<Rational, Rational>>> boxes(n);
  std::vector<Rational> tallest(n, Rational(0));
  for (std::size_t m = 0; m < n; ++m) {
    for (const auto& g : members[m].generators()) {
      const Rational h = piece.height(to_rational(g));
      tallest[m] = std::max(tallest[m], h);
      for (std::size_t k = 0; k < d; ++k) {
        const Rational x = g[k] / h;
        if (boxes[m].size() <= k) {
          boxes[m].emplace_back(x, x);
        } else {
          boxes[m][k].first = std::min(boxes[m][k].first, x);
          boxes[m][k].second = std::max(boxes[m][k].second, x);
        }
      }
    }
  }
  auto overlap = [&](std::size_t a, std::size_t b) {
    for (std::size_t k = 0; k < d; ++k)
      if (boxes[a][k].second < boxes[b][k].first || boxes[b][k].second < boxes[a][k].first) return false;
    return true;
  };
  std::vector<std::size_t> order(n);
  for (std::size_t m = 0; m < n; ++m) order[m] = m;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return tallest[a] > tallest[b]; });
  std::vector<bool> kept(n, true);
  for (std::size_t m : order) {
    std::vector<SimplicialCone> others;
    for (std::size_t k = 0; k < n; ++k)
      if (k != m && kept[k] && overlap(m, k)) others.push_back(members[k]);
    if (!others.empty() && union_covers({members[m]}, others) == Verdict::pass) kept[m] = false;
  }
  std::vector<SimplicialCone> out;
  for (std::size_t m = 0; m < n; ++m)
    if (kept[m]) out.push_back(std::move(members[m]));
  return out;
}

// Members covering an empty non-unimodular simplicial cone of dimension >= 3:
// every corner cover member, plus the cones extending it across the
// hyperplane through the barycenter of the cross-section.
std::vector<SimplicialCone> cover_empty_piece(const SimplicialCone& piece) {
  const std::size_t d = piece.dim();
  const long dm1 = static_cast<long>(d) - 1;
  const BoundParams bounds = cone_cover_bounds(d);
  const Integer tile_scale = ceil_sqrt(Rational(dm1)) * static_cast<long>(d);
  const Rational eps = fraction(1, static_cast<long>(d));
  const Rational theta = fraction(static_cast<long>(d), dm1);
  std::vector<SimplicialCone> out;

  for (std::size_t i = 0; i < d; ++i) {
    const CornerCover corner = corner_cover(piece, i);
    const IntVector& v1 = piece.generator(i);
    const RatVector v1r = to_rational(v1);
    auto side = [&](const IntVector& x) {
      const RatVector xi = piece.coefficients(x);
      Rational s = dm1 * xi[i];
      for (std::size_t j = 0; j < d; ++j)
        if (j != i) s -= xi[j];
      return s;
    };

    for (const auto& member : corner.members) {
      out.push_back(member);
      std::vector<IntVector> bad, good;
      std::vector<RatVector> cut;  // where the edge v1 -> u meets the hyperplane, for bad u
      for (const auto& u : member.generators()) {
        if (u == v1) continue;
        const Rational f = side(u);
        const Rational s = Rational(dm1) / (dm1 - f);
        const RatVector p = v1r + s * (to_rational(u) - v1r);
        const RatVector dilated = v1r + theta * (p - v1r);
        const RatVector xi = piece.coefficients(dilated);
        Rational height = 0;
        for (const auto& t : xi) {
          if (t < 0) throw std::logic_error("cover_cone: cut simplex leaves the cone");
          height += t;
        }
        if (height > static_cast<long>(d) + 1)
          throw std::logic_error("cover_cone: dilated cut simplex exceeds (d+1) Delta_C");
        if (f > 0) {
          bad.push_back(u);
          cut.push_back(p);
        } else {
          good.push_back(u);
        }
      }
      if (bad.empty()) continue;

      std::vector<RatVector> frame, target;
      for (std::size_t m = 0; m < bad.size(); ++m) {
        frame.push_back(to_rational(bad[m]) - v1r);
        target.push_back(cut[m] - v1r);
      }
      const TileCover tiles = tile_cover(frame, target, eps, Rational(tile_scale));
      for (const auto& tile : tiles.tiles) {
        // coordinates over (v1, bad...) of gamma v1 + sum a_m (u_m - v1)
        std::vector<IntVector> local;
        for (const auto& a : tile.coefficients) {
          IntVector z{bounds.gamma};
          for (const auto& am : a) {
            z[0] -= am;
            z.push_back(am);
          }
          local.push_back(std::move(z));
        }
        const Resolution res = resolve_cone(SimplicialCone(local));
        for (const auto& delta : res.members) {
          std::vector<IntVector> gens;
          for (const auto& z : delta.generators()) {
            IntVector g = z[0] * v1;
            for (std::size_t m = 0; m < bad.size(); ++m) g = g + z[m + 1] * bad[m];
            gens.push_back(std::move(g));
          }
          gens.insert(gens.end(), good.begin(), good.end());
          SimplicialCone cone(gens);
          if (!cone.unimodular()) throw std::logic_error("cover_cone: extended member is not unimodular");
          out.push_back(std::move(cone));
        }
      }
    }
  }
  return out;
}

}  // namespace

CornerCover corner_cover(const SimplicialCone& c, std::size_t vertex_index) {
  const std::size_t d = c.dim();
  if (vertex_index >= d) throw DomainError("corner_cover: vertex index out of range");
  const IntVector& v1 = c.generator(vertex_index);
  if (d == 1) return CornerCover{c, v1, {c}, Rational(1), Rational(1)};

  std::vector<std::size_t> others;
  for (std::size_t j = 0; j < d; ++j)
    if (j != vertex_index) others.push_back(j);

  // L = projection of Z^d along v1, in coordinates over w_j = v_j - v1
  std::vector<IntVector> scaled_images;
  for (std::size_t k = 0; k < d; ++k) {
    IntVector e(d, Integer(0));
    e[k] = 1;
    const IntVector s = c.scaled_coefficients(e);
    IntVector row;
    for (auto j : others) row.push_back(s[j]);
    scaled_images.push_back(std::move(row));
  }
  const auto lbasis = lattice_basis(std::span<const IntVector>(scaled_images));
  const Rational inv_det = fraction(1, c.determinant());
  std::vector<RatVector> basis;
  for (const auto& row : lbasis) basis.push_back(inv_det * to_rational(row));
  const auto basis_inv = inverse(basis);

  std::vector<IntVector> projected;
  for (std::size_t j = 0; j < d - 1; ++j) projected.push_back(to_integer(basis_inv[j]));
  const auto lower = cone_cover_members(Cone(d - 1, projected));

  const IntVector lambda = bezout(v1);
  CornerCover out{c, v1, {}, Rational(1), cone_factor(d - 1) + 1};
  for (const auto& m : lower) {
    std::vector<IntVector> gens{v1};
    std::vector<RatVector> w_coords;
    Rational max_lift = 0;
    for (const auto& z : m.generators()) {
      RatVector a(d - 1, Rational(0));
      for (std::size_t k = 0; k < d - 1; ++k)
        if (z[k] != 0) a = a + Rational(z[k]) * basis[k];
      RatVector y(d, Rational(0));
      Rational sum = 0;
      for (std::size_t j = 0; j < d - 1; ++j) {
        y = y + a[j] * to_rational(c.generator(others[j]));
        sum += a[j];
      }
      const Rational s = frac_of(-dot(lambda, y));
      const RatVector lifted = y + s * to_rational(v1);
      if (!is_integral(lifted)) throw std::logic_error("corner_cover: lift is not a lattice point");
      gens.push_back(to_integer(lifted));
      w_coords.push_back(std::move(a));
      max_lift = std::max(max_lift, Rational(s + sum));
    }
    SimplicialCone member(gens);
    if (!member.unimodular()) throw std::logic_error("corner_cover: member is not unimodular");
    out.members.push_back(std::move(member));

    if (max_lift > 0) {
      const auto change = inverse(w_coords);
      Rational norm = 0;
      for (std::size_t col = 0; col < d - 1; ++col) {
        Rational s = 0;
        for (std::size_t row = 0; row < d - 1; ++row) s += abs(change[row][col]);
        norm = std::max(norm, s);
      }
      out.eta = std::min(out.eta, Rational(1 / (Rational(static_cast<long>(d) - 1) * norm * max_lift)));
    }
  }
  out.members = canonical_members(std::move(out.members));
  return out;
}

std::vector<SimplicialCone> cone_cover_members(const Cone& c) {
  if (!c.full_dimensional()) throw DomainError("cone_cover_members: cone is not full-dimensional");
  const std::size_t d = c.dim();
  if (d == 1) return {SimplicialCone(c.generators())};
  std::vector<SimplicialCone> pieces;
  for (const auto& cell : triangulate_cone(c).members)
    for (auto& piece : refine_to_empty(cell).members) pieces.push_back(std::move(piece));
  if (d == 2) return canonical_members(std::move(pieces));
  std::vector<SimplicialCone> out;
  for (const auto& piece : pieces) {
    if (piece.unimodular()) {
      out.push_back(piece);
      continue;
    }
    auto more = prune_redundant(piece, canonical_members(cover_empty_piece(piece)));
    out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
  }
  return canonical_members(std::move(out));
}

CoverCertificate cover_cone(const Cone& c, const std::optional<Rational>& factor_override) {
  if (c.dim() < 2) throw DomainError("cover_cone: dimension must be at least 2");
  if (!c.full_dimensional()) throw DomainError("cover_cone: cone is not full-dimensional");
  CoverCertificate cert;
  cert.kind = CertificateKind::cone_cover;
  cert.dim = c.dim();
  cert.cone = c;
  cert.claimed_factor = factor_override ? *factor_override : cone_cover_bounds(c.dim()).kappa;
  for (const auto& m : cone_cover_members(c)) cert.members.push_back(m.sorted_generators());
  return cert;
}

namespace {

struct CornerSystem {
  std::vector<IntVector> simplex;  // vertices of an empty simplex of the triangulation
  std::size_t corner = 0;
  SimplicialCone cone;             // spanned by v_j - v_corner
  std::vector<SimplicialCone> members;
};

std::vector<CornerSystem> corner_systems(const LatticePolytope& p) {
  std::vector<CornerSystem> out;
  for (const auto& s : triangulate_polytope_empty(p)) {
    const auto verts = s.integer_vertices();
    for (std::size_t i = 0; i < verts.size(); ++i) {
      std::vector<IntVector> edges;
      for (std::size_t j = 0; j < verts.size(); ++j)
        if (j != i) edges.push_back(verts[j] - verts[i]);
      SimplicialCone cone(edges, false);
      auto members = cone_cover_members(cone.as_cone());
      out.push_back(CornerSystem{verts, i, std::move(cone), std::move(members)});
    }
  }
  return out;
}

Integer inner_factor(const std::vector<CornerSystem>& systems) {
  Integer best = 1;
  for (const auto& sys : systems)
    for (const auto& m : sys.members)
      for (const auto& g : m.generators()) best = std::max(best, ceil_of(sys.cone.height(to_rational(g))));
  return best;
}

}  // namespace

Integer polytope_inner_factor(const LatticePolytope& p) {
  if (!p.full_dimensional()) throw DomainError("polytope_inner_factor: polytope is not full-dimensional");
  if (p.ambient_dim() == 1) return 1;
  return inner_factor(corner_systems(p));
}

CoverCertificate cover_polytope_multiple(const LatticePolytope& p, const Integer& c) {
  if (!p.full_dimensional()) throw DomainError("cover_polytope_multiple: polytope is not full-dimensional");
  if (c < 1) throw DomainError("cover_polytope_multiple: multiple must be positive");
  const std::size_t d = p.ambient_dim();
  CoverCertificate cert;
  cert.kind = CertificateKind::polytope_cover;
  cert.dim = d;
  cert.polytope = p;
  cert.multiple = c;
  cert.claimed_factor = Rational(c);

  if (d == 1) {
    const Integer lo = c * p.vertices().front()[0];
    const Integer hi = c * p.vertices().back()[0];
    for (Integer x = lo; x < hi; ++x) cert.members.push_back({IntVector{x}, IntVector{x + 1}});
    return cert;
  }

  const auto systems = corner_systems(p);
  const Integer outer = inner_factor(systems);
  const Integer pol_factor = cone_cover_bounds(d).pol_factor;
  const Integer dl = static_cast<long>(d);
  if (c % outer != 0 || (c / outer) * (c / outer) < dl * (dl + 1) * (dl + 1))
    throw MultipleNotAdmissible("cover_polytope_multiple: multiple " + c.get_str() + " is not admissible",
                                outer * pol_factor);
  const Integer inner = c / outer;
  const Rational eps = fraction(1, dl + 1);

  std::set<std::vector<IntVector>> members;
  for (const auto& sys : systems) {
    const RatVector shift = Rational(c) * to_rational(sys.simplex[sys.corner]);
    for (const auto& m : sys.members) {
      std::vector<RatVector> frame, target;
      for (const auto& g : m.generators()) {
        frame.push_back(to_rational(g));
        target.push_back(Rational(outer) / sys.cone.height(to_rational(g)) * to_rational(g));
      }
      for (const auto& tile : tile_cover(frame, target, eps, Rational(inner)).tiles) {
        std::vector<IntVector> verts;
        for (const auto& v : tile.vertices) verts.push_back(to_integer(v + shift));
        std::sort(verts.begin(), verts.end());
        members.insert(std::move(verts));
      }
    }
  }
  cert.members.assign(members.begin(), members.end());
  return cert;
}

namespace {

std::vector<ProbeRow> probe(long first, long last, const std::function<std::optional<CoverCertificate>(long)>& build,
                            std::size_t max_depth, const std::function<std::string(long)>& shortcut = {}) {
  if (first > last) throw DomainError("probe_minimal_factor: empty range");
  std::vector<ProbeRow> rows;
  for (long f = first; f <= last; ++f) {
    if (shortcut) {
      rows.push_back(ProbeRow{Integer(f), shortcut(f)});
      continue;
    }
    const auto cert = build(f);
    rows.push_back(ProbeRow{Integer(f), cert ? to_string(verify_cover(*cert, max_depth).verdict) : "refused"});
  }
  return rows;
}

}  // namespace

std::vector<ProbeRow> probe_minimal_factor(const Cone& c, long first, long last, std::size_t max_depth) {
  // the factor only enters the height check, so coverage is verified once at
  // the largest generator height and the rows follow from that height
  CoverCertificate cert = cover_cone(c);
  Rational achieved = 0;
  for (const auto& m : cert.members)
    for (const auto& g : m) {
      const auto h = min_height(c.generators(), to_rational(g));
      if (!h) throw std::logic_error("probe_minimal_factor: member leaves the cone");
      achieved = std::max(achieved, *h);
    }
  cert.claimed_factor = achieved;
  const Verdict base = verify_cover(cert, max_depth).verdict;
  return probe(
      first, last,
      [](long) -> std::optional<CoverCertificate> { return std::nullopt; }, max_depth,
      [&](long f) { return Rational(f) < achieved ? std::string("fail") : to_string(base); });
}

std::vector<ProbeRow> probe_minimal_factor(const LatticePolytope& p, long first, long last, std::size_t max_depth) {
  return probe(
      first, last,
      [&](long f) -> std::optional<CoverCertificate> {
        if (f < 1) return std::nullopt;
        try {
          return cover_polytope_multiple(p, Integer(f));
        } catch (const MultipleNotAdmissible&) {
          return std::nullopt;
        }
      },
      max_depth);
}

}  // namespace unicover
