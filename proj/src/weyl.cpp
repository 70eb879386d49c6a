#include "unicover/weyl.hpp"

#include <algorithm>
#include <numeric>

namespace unicover {

std::vector<IntVector> WeylSimplex::vertices() const {
  std::vector<IntVector> out{translate};
  IntVector x = translate;
  for (auto s : sigma) {
    x[s] += 1;
    out.push_back(x);
  }
  return out;
}

WeylSimplex weyl_simplex(std::vector<std::size_t> sigma, IntVector translate) {
  if (sigma.size() != translate.size()) throw DimensionError("weyl_simplex: permutation and translate differ in size");
  auto check = sigma;
  std::sort(check.begin(), check.end());
  for (std::size_t i = 0; i < check.size(); ++i)
    if (check[i] != i) throw DomainError("weyl_simplex: not a permutation");
  return WeylSimplex{std::move(sigma), std::move(translate)};
}

Rational directional_width_squared(std::span<const RatVector> points, const RatVector& a) {
  if (is_zero(a)) throw DomainError("directional_width: zero functional");
  if (points.empty()) return 0;
  Rational lo = dot(a, points.front()), hi = lo;
  for (const auto& p : points) {
    const Rational v = dot(a, p);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return (hi - lo) * (hi - lo) / dot(a, a);
}

std::vector<Rational> ray_ratios(std::span<const RatVector> frame, std::span<const RatVector> target) {
  if (frame.size() != target.size()) throw DimensionError("ray_ratios: frame and target differ in size");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < frame.size(); ++i) {
    const auto& v = frame[i];
    const auto& w = target[i];
    if (v.size() != w.size()) throw DimensionError("ray_ratios: dimension mismatch");
    if (is_zero(v)) throw DomainError("ray_ratios: zero frame vertex");
    std::optional<Rational> lambda;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      lambda = w[k] / v[k];
      break;
    }
    if (!lambda || *lambda <= 0 || (*lambda) * v != w)
      throw DomainError("ray_ratios: target vertex not on the ray of its frame vertex");
    out.push_back(*lambda);
  }
  return out;
}

std::vector<std::size_t> reorder_by_ratio(std::span<const RatVector> frame, std::span<const RatVector> target) {
  const auto lambda = ray_ratios(frame, target);
  std::vector<std::size_t> order(lambda.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lambda[a] > lambda[b]; });
  return order;
}

Integer minimal_tile_scale(std::size_t dim, const Rational& epsilon) {
  if (epsilon <= 0) throw DomainError("minimal_tile_scale: epsilon must be positive");
  return ceil_sqrt(Rational(static_cast<long>(dim)) / (epsilon * epsilon));
}

bool distance_lemma_holds(const std::vector<Rational>& sorted_ratios) {
  if (sorted_ratios.empty()) return true;
  Rational norm2 = 0;
  Rational prev_inv = 0;
  for (const auto& l : sorted_ratios) {
    if (l <= 0) return false;
    const Rational alpha = Rational(1) / l - prev_inv;
    if (alpha < 0) return false;
    norm2 += alpha * alpha;
    prev_inv = Rational(1) / l;
  }
  const Rational& last = sorted_ratios.back();
  return norm2 * last * last <= 1;
}

namespace {

// z in c * target in standard coordinates: z_i - z_{i+1} >= 0 and
// sum (z_i - z_{i+1}) / (c lambda_i) <= 1.
bool inside(const IntVector& z, const std::vector<Rational>& scaled) {
  Rational s = 0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const Integer mu = i + 1 < z.size() ? Integer(z[i] - z[i + 1]) : z[i];
    if (mu < 0) return false;
    s += Rational(mu) / scaled[i];
  }
  return s <= 1;
}

}  // namespace

TileCover tile_cover(std::span<const RatVector> frame, std::span<const RatVector> target, const Rational& epsilon,
                     const Rational& c) {
  const std::size_t e = frame.size();
  if (e == 0) throw DomainError("tile_cover: empty frame");
  if (epsilon <= 0 || epsilon >= 1) throw DomainError("tile_cover: epsilon must lie in (0,1)");
  if (rank(frame) != e) throw DomainError("tile_cover: frame vertices are linearly dependent");
  if (c * c * epsilon * epsilon < static_cast<long>(e))
    throw ScaleTooSmall("tile_cover: scale too small for epsilon", minimal_tile_scale(e, epsilon));

  TileCover out;
  out.frame.assign(frame.begin(), frame.end());
  out.target.assign(target.begin(), target.end());
  out.scale = c;
  out.epsilon = epsilon;
  const auto lambda = ray_ratios(frame, target);
  out.order = reorder_by_ratio(frame, target);

  std::vector<Rational> scaled(e);
  for (std::size_t i = 0; i < e; ++i) scaled[i] = c * lambda[out.order[i]];
  const Integer bound = floor_of(scaled[0]);

  std::vector<std::vector<std::size_t>> perms;
  {
    std::vector<std::size_t> p(e);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
  }

  auto emit = [&](const IntVector& z) {
    for (const auto& sigma : perms) {
      const auto verts = WeylSimplex{sigma, z}.vertices();
      if (!std::all_of(verts.begin(), verts.end(), [&](const IntVector& x) { return inside(x, scaled); })) continue;
      Tile t;
      for (const auto& x : verts) {
        IntVector coeff(e, Integer(0));
        RatVector point(frame.front().size(), Rational(0));
        for (std::size_t i = 0; i < e; ++i) {
          const Integer mu = i + 1 < e ? Integer(x[i] - x[i + 1]) : x[i];
          coeff[out.order[i]] = mu;
          if (mu != 0) point = point + Rational(mu) * frame[out.order[i]];
        }
        t.coefficients.push_back(std::move(coeff));
        t.vertices.push_back(std::move(point));
      }
      out.tiles.push_back(std::move(t));
    }
  };

  // monotone z_1 >= ... >= z_e >= 0 with z_1 <= bound
  IntVector z(e, Integer(0));
  auto rec = [&](auto&& self, std::size_t i, const Integer& upper, const Rational& used) -> void {
    if (i == e) {
      emit(z);
      return;
    }
    for (Integer v = 0; v <= upper; ++v) {
      z[i] = v;
      // partial budget: the differences fixed so far are z_{k} - z_{k+1}, k < i
      Rational u = used;
      if (i > 0) u += Rational(z[i - 1] - v) / scaled[i - 1];
      if (u > 1) continue;
      self(self, i + 1, v, u);
    }
  };
  rec(rec, 0, bound, Rational(0));

  std::sort(out.tiles.begin(), out.tiles.end(),
            [](const Tile& a, const Tile& b) { return a.coefficients < b.coefficients; });
  return out;
}

}  // namespace unicover
