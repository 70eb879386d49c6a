#include "unicover/verify.hpp"

#include "unicover/subdivide.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>

namespace unicover {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::inconclusive:
      return "inconclusive";
  }
  return "fail";
}

namespace {

bool polytope_mode(const CoverCertificate& cert) { return cert.kind == CertificateKind::polytope_cover; }

void check_structure(const CoverCertificate& cert) {
  const std::size_t d = cert.dim;
  if (d == 0) throw StructuralError("dim: must be positive");
  if (polytope_mode(cert)) {
    if (!cert.polytope) throw StructuralError("polytope: missing input polytope");
    if (cert.polytope->ambient_dim() != d) throw StructuralError("dim: does not match the polytope");
    if (!cert.polytope->full_dimensional()) throw StructuralError("polytope: not full-dimensional");
    if (cert.multiple < 1) throw StructuralError("multiple: must be positive");
  } else {
    if (!cert.cone) throw StructuralError("cone: missing input cone");
    if (cert.cone->dim() != d) throw StructuralError("dim: does not match the cone");
    if (!cert.cone->full_dimensional()) throw StructuralError("cone: not full-dimensional");
  }
  const std::size_t count = polytope_mode(cert) ? d + 1 : d;
  for (std::size_t i = 0; i < cert.members.size(); ++i) {
    const auto& m = cert.members[i];
    if (m.size() != count)
      throw StructuralError("members[" + std::to_string(i) + "]: expected " + std::to_string(count) + " vectors");
    for (std::size_t j = 0; j < m.size(); ++j)
      if (m[j].size() != d)
        throw StructuralError("members[" + std::to_string(i) + "][" + std::to_string(j) + "]: expected " +
                              std::to_string(d) + " coordinates");
  }
}

IntVector homogenize(const IntVector& x) {
  IntVector y = x;
  y.push_back(1);
  return y;
}

// Members and region as cones in the working space (R^d in cone mode, R^(d+1)
// over the hyperplane x_{d+1} = 1 in polytope mode).
std::vector<IntVector> working_generators(const CoverCertificate& cert, const std::vector<IntVector>& member) {
  if (!polytope_mode(cert)) return member;
  std::vector<IntVector> out;
  for (const auto& v : member) out.push_back(homogenize(v));
  return out;
}

std::vector<SimplicialCone> region_pieces(const CoverCertificate& cert) {
  std::vector<SimplicialCone> out;
  if (polytope_mode(cert)) {
    std::vector<IntVector> lifted;
    for (const auto& v : cert.polytope->vertices()) lifted.push_back(homogenize(cert.multiple * v));
    for (const auto& cell : placing_triangulation(lifted)) out.emplace_back(cell, false);
  } else if (cert.dim == 1) {
    out.emplace_back(cert.cone->generators());
  } else {
    out = triangulate_cone(*cert.cone).members;
  }
  return out;
}

std::optional<SimplicialCone> member_cone(const CoverCertificate& cert, const std::vector<IntVector>& member) {
  const auto gens = working_generators(cert, member);
  if (integer_determinant(IntMatrix::from_columns(gens)) == 0) return std::nullopt;
  return SimplicialCone(gens, false);
}

// A nonzero lattice point with all coefficients over vectors in [0, 1); exists iff |det| > 1.
std::optional<IntVector> box_witness(const std::vector<IntVector>& vectors) {
  const std::size_t d = vectors.size();
  for (std::size_t k = 0; k < d; ++k) {
    RatVector unit(d, Rational(0));
    unit[k] = 1;
    const auto coeffs = solve_in_columns(std::span<const IntVector>(vectors), unit);
    if (!coeffs || is_integral(*coeffs)) continue;
    IntVector p(d, Integer(0));
    p[k] = 1;
    for (std::size_t i = 0; i < d; ++i) p = p - floor_of((*coeffs)[i]) * vectors[i];
    return p;
  }
  return std::nullopt;
}

std::optional<RatVector> unimodular_witness(const CoverCertificate& cert, const std::vector<IntVector>& member) {
  if (!polytope_mode(cert)) {
    if (auto p = box_witness(member)) return to_rational(*p);
    return std::nullopt;
  }
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < member.size(); ++i) edges.push_back(member[i] - member[0]);
  if (auto p = box_witness(edges)) return to_rational(member[0] + *p);
  return std::nullopt;
}

using Bits = std::vector<std::uint64_t>;

struct Cell {
  std::vector<IntVector> verts;
  std::size_t piece = 0;
  std::size_t depth = 0;
};

struct Coverage {
  Verdict verdict = Verdict::pass;
  std::optional<RatVector> witness;
  std::vector<RatVector> deepest;
  std::size_t depth_used = 0;
  std::size_t cells = 0;
  Rational fraction = 0;
};

// Cuts a cell by the hyperplane value = 0 until no piece has vertices on both sides.
void split(std::vector<IntVector> verts, const std::function<Integer(const IntVector&)>& value,
           std::vector<std::vector<IntVector>>& out) {
  std::vector<Integer> vals;
  for (const auto& v : verts) vals.push_back(value(v));
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (std::size_t j = i + 1; j < verts.size(); ++j) {
      if (sgn(vals[i]) * sgn(vals[j]) >= 0) continue;
      const IntVector p = primitive_vector(abs(vals[i]) * verts[j] + abs(vals[j]) * verts[i]);
      auto first = verts;
      first[j] = p;
      auto second = std::move(verts);
      second[i] = p;
      split(std::move(first), value, out);
      split(std::move(second), value, out);
      return;
    }
  out.push_back(std::move(verts));
}

Coverage run_coverage(const CoverCertificate& cert, const std::vector<SimplicialCone>& pieces,
                      const std::vector<SimplicialCone>& members, std::size_t max_depth, bool exhaustive) {
  const std::size_t words = (members.size() + 63) / 64;
  // polytope mode: coordinate bounding boxes of the member simplices, a cheap prefilter
  const bool boxed = polytope_mode(cert);
  const std::size_t d = cert.dim;
  std::vector<std::vector<std::pair<Integer, Integer>>> boxes;
  if (boxed)
    for (const auto& m : members) {
      std::vector<std::pair<Integer, Integer>> box;
      for (std::size_t k = 0; k < d; ++k) {
        Integer lo = m.generator(0)[k], hi = lo;
        for (const auto& g : m.generators()) {
          if (g[k] < lo) lo = g[k];
          if (g[k] > hi) hi = g[k];
        }
        box.emplace_back(lo, hi);
      }
      boxes.push_back(std::move(box));
    }
  // members sorted by the lower end of their first-coordinate range; a vertex
  // only scans the ones whose lower end lies in [floor - width, ceil]
  std::vector<std::size_t> by_lo(members.size());
  Integer width = 0;
  if (boxed) {
    for (std::size_t m = 0; m < members.size(); ++m) {
      by_lo[m] = m;
      if (boxes[m][0].second - boxes[m][0].first > width) width = boxes[m][0].second - boxes[m][0].first;
    }
    std::sort(by_lo.begin(), by_lo.end(), [&](std::size_t a, std::size_t b) { return boxes[a][0].first < boxes[b][0].first; });
  }
  // lo <= x/t <= hi for integers lo, hi iff lo <= ceil(x/t) and floor(x/t) <= hi
  std::vector<Integer> floors(d), ceils(d);
  auto in_box = [&](std::size_t m) {
    for (std::size_t k = 0; k < d; ++k)
      if (ceils[k] < boxes[m][k].first || floors[k] > boxes[m][k].second) return false;
    return true;
  };
  std::map<IntVector, Bits> cache;
  auto bits_of = [&](const IntVector& v) -> const Bits& {
    auto it = cache.find(v);
    if (it != cache.end()) return it->second;
    Bits b(words, 0);
    if (boxed)
      for (std::size_t k = 0; k < d; ++k) {
        mpz_fdiv_q(floors[k].get_mpz_t(), v[k].get_mpz_t(), v[d].get_mpz_t());
        mpz_cdiv_q(ceils[k].get_mpz_t(), v[k].get_mpz_t(), v[d].get_mpz_t());
      }
    if (boxed) {
      const Integer from = floors[0] - width;
      auto it = std::lower_bound(by_lo.begin(), by_lo.end(), from,
                                 [&](std::size_t m, const Integer& x) { return boxes[m][0].first < x; });
      for (; it != by_lo.end() && boxes[*it][0].first <= ceils[0]; ++it)
        if (in_box(*it) && members[*it].contains(v)) b[*it / 64] |= std::uint64_t(1) << (*it % 64);
    } else {
      for (std::size_t m = 0; m < members.size(); ++m)
        if (members[m].contains(v)) b[m / 64] |= std::uint64_t(1) << (m % 64);
    }
    return cache.emplace(v, std::move(b)).first->second;
  };
  auto has = [](const Bits& b, std::size_t m) { return (b[m / 64] >> (m % 64)) & 1U; };
  auto section = [&](const Cell& cell) {
    std::vector<RatVector> pts;
    for (const auto& v : cell.verts) {
      RatVector p = (1 / pieces[cell.piece].height(to_rational(v))) * to_rational(v);
      if (polytope_mode(cert)) p.pop_back();
      pts.push_back(std::move(p));
    }
    return pts;
  };

  Coverage out;
  Rational total = 0, discharged = 0;
  std::vector<Cell> stack;
  for (std::size_t i = pieces.size(); i-- > 0;) {
    total += Rational(pieces[i].multiplicity());
    stack.push_back(Cell{pieces[i].generators(), i, 0});
  }

  while (!stack.empty()) {
    Cell cell = std::move(stack.back());
    stack.pop_back();
    ++out.cells;
    out.depth_used = std::max(out.depth_used, cell.depth);
    const auto& ref = pieces[cell.piece];

    Bits common = bits_of(cell.verts.front());
    for (std::size_t k = 1; k < cell.verts.size(); ++k) {
      const Bits& b = bits_of(cell.verts[k]);
      for (std::size_t w = 0; w < words; ++w) common[w] &= b[w];
    }
    if (std::any_of(common.begin(), common.end(), [](std::uint64_t w) { return w != 0; })) {
      Rational vol(abs(integer_determinant(IntMatrix::from_columns(cell.verts))));
      for (const auto& v : cell.verts) vol /= ref.height(to_rational(v));
      discharged += vol;
      continue;
    }

    RatVector bary(ref.dim(), Rational(0));
    for (const auto& v : cell.verts) bary = bary + (1 / ref.height(to_rational(v))) * to_rational(v);
    bary = fraction(1, static_cast<long>(cell.verts.size())) * bary;
    const Bits& at_bary = bits_of(primitive_direction(bary));
    // the member to cut with: one containing the barycenter with most vertices;
    // in exhaustive mode an uncovered cell is still cut by the member holding
    // most of its vertices so that the covered part keeps being discharged
    std::vector<const Bits*> vertex_bits;
    for (const auto& v : cell.verts) vertex_bits.push_back(&bits_of(v));
    auto pick = [&](bool need_bary) {
      std::size_t best = members.size();
      std::size_t best_count = 0;
      for (std::size_t w = 0; w < words; ++w) {
        std::uint64_t candidates = at_bary[w];
        if (!need_bary)
          for (const Bits* b : vertex_bits) candidates |= (*b)[w];
        for (; candidates != 0; candidates &= candidates - 1) {
          const std::size_t m = w * 64 + static_cast<std::size_t>(__builtin_ctzll(candidates));
          std::size_t count = 0;
          for (const Bits* b : vertex_bits) count += has(*b, m);
          if (!need_bary && count == 0) continue;
          if (best == members.size() || count > best_count) {
            best = m;
            best_count = count;
          }
        }
      }
      return best;
    };
    std::size_t best = pick(true);
    if (best == members.size()) {
      if (!out.witness) {
        if (polytope_mode(cert)) bary.pop_back();
        out.witness = std::move(bary);
      }
      out.verdict = Verdict::fail;
      if (!exhaustive || cell.depth >= max_depth) {
        if (exhaustive) continue;
        break;
      }
      best = pick(false);
      if (best == members.size()) continue;
    } else if (cell.depth >= max_depth) {
      if (out.verdict == Verdict::pass) {
        out.deepest = section(cell);
        out.verdict = Verdict::inconclusive;
      }
      continue;
    }

    const SimplicialCone& member = members[best];
    const int orientation = sgn(member.determinant());
    // a facet hyperplane with cell vertices strictly on both sides
    std::size_t facet = member.dim();
    for (std::size_t k = 0; k < member.dim() && facet == member.dim(); ++k) {
      bool below = false, above = false;
      for (const auto& v : cell.verts) {
        const int side = orientation * sgn(member.scaled_coefficients(v)[k]);
        below = below || side < 0;
        above = above || side > 0;
      }
      if (below && above) facet = k;
    }
    if (facet == member.dim()) {
      if (exhaustive) continue;
      throw std::logic_error("verify_cover: no separating facet");
    }
    std::vector<std::vector<IntVector>> pieces_out;
    split(cell.verts,
          [&](const IntVector& v) { return Integer(orientation * member.scaled_coefficients(v)[facet]); },
          pieces_out);
    for (auto it = pieces_out.rbegin(); it != pieces_out.rend(); ++it)
      stack.push_back(Cell{std::move(*it), cell.piece, cell.depth + 1});
  }
  out.fraction = total == 0 ? Rational(0) : discharged / total;
  return out;
}

}  // namespace

VerificationReport verify_cover(const CoverCertificate& cert, std::size_t max_depth) {
  check_structure(cert);
  VerificationReport report;
  report.claimed_factor = cert.claimed_factor;
  const auto pieces = region_pieces(cert);

  auto inside = [&](const IntVector& g) {
    if (!polytope_mode(cert)) return cert.cone->contains(to_rational(g));
    const IntVector h = homogenize(g);
    return std::any_of(pieces.begin(), pieces.end(), [&](const SimplicialCone& p) { return p.contains(h); });
  };
  auto bounded = [&](const IntVector& g) {
    const auto h = min_height(cert.cone->generators(), to_rational(g));
    return h && *h <= cert.claimed_factor;
  };

  std::vector<SimplicialCone> members;
  report.member_checks.resize(cert.members.size());
  for (std::size_t i = 0; i < cert.members.size(); ++i) {
    auto& check = report.member_checks[i];
    const auto& raw = cert.members[i];
    const auto gens = working_generators(cert, raw);
    const Integer det = integer_determinant(IntMatrix::from_columns(gens));
    check.unimodular = det == 1 || det == -1;
    check.inside = std::all_of(raw.begin(), raw.end(), [&](const IntVector& g) { return inside(g); });
    if (!polytope_mode(cert))
      check.bounded = std::all_of(raw.begin(), raw.end(), [&](const IntVector& g) { return bounded(g); });
    if (check.unimodular) members.emplace_back(gens, false);
  }

  auto first_failing = [&](bool MemberCheck::*field) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < report.member_checks.size(); ++i)
      if (!(report.member_checks[i].*field)) return i;
    return std::nullopt;
  };
  const std::pair<bool MemberCheck::*, const char*> stages[] = {
      {&MemberCheck::unimodular, "unimodular"}, {&MemberCheck::inside, "containment"}, {&MemberCheck::bounded, "factor"}};
  for (const auto& [field, name] : stages)
    if (auto i = first_failing(field)) {
      report.verdict = Verdict::fail;
      report.failed_check = name;
      report.failed_member = *i;
      const auto& raw = cert.members[*i];
      if (field == &MemberCheck::unimodular) {
        report.witness = unimodular_witness(cert, raw);
      } else {
        const auto ok = field == &MemberCheck::inside ? std::function<bool(const IntVector&)>(inside)
                                                      : std::function<bool(const IntVector&)>(bounded);
        report.witness = to_rational(*std::find_if_not(raw.begin(), raw.end(), ok));
      }
      return report;
    }

  const Coverage cov = run_coverage(cert, pieces, members, max_depth, false);
  report.verdict = cov.verdict;
  report.witness = cov.witness;
  report.deepest_cell = cov.deepest;
  report.depth_used = cov.depth_used;
  report.cells_processed = cov.cells;
  report.coverage_fraction = cov.fraction;
  if (cov.verdict == Verdict::fail) report.failed_check = "coverage";
  return report;
}

Rational coverage_lower_bound(const CoverCertificate& cert, std::size_t max_depth) {
  check_structure(cert);
  std::vector<SimplicialCone> members;
  for (const auto& m : cert.members)
    if (auto c = member_cone(cert, m)) members.push_back(std::move(*c));
  return run_coverage(cert, region_pieces(cert), members, max_depth, true).fraction;
}

Verdict union_covers(const std::vector<SimplicialCone>& region, const std::vector<SimplicialCone>& members,
                     std::size_t max_depth) {
  if (region.empty()) return Verdict::pass;
  CoverCertificate frame;
  frame.dim = region.front().dim();
  return run_coverage(frame, region, members, max_depth, false).verdict;
}

bool certificate_covers(const CoverCertificate& cert, const RatVector& p) {
  check_structure(cert);
  RatVector x = p;
  if (polytope_mode(cert)) x.push_back(1);
  for (const auto& m : cert.members)
    if (auto c = member_cone(cert, m); c && c->contains(x)) return true;
  return false;
}

}  // namespace unicover
