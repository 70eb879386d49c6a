#include "unicover/geom.hpp"

#include <algorithm>
#include <set>
#include <utility>

namespace unicover {

namespace {

std::vector<IntVector> select(std::span<const IntVector> v, const std::vector<std::size_t>& idx) {
  std::vector<IntVector> out;
  out.reserve(idx.size());
  for (auto i : idx) out.push_back(v[i]);
  return out;
}

void require_dim(const RatVector& p, std::size_t dim, const char* what) {
  if (p.size() != dim) throw DomainError(std::string(what) + ": dimension mismatch");
}

}  // namespace

// ---- hyperplanes ------------------------------------------------------------

IntVector hyperplane_normal(std::span<const IntVector> vectors) {
  const std::size_t n = vectors.size() + 1;
  for (const auto& v : vectors)
    if (v.size() != n) throw DimensionError("hyperplane_normal: need n-1 vectors in R^n");
  IntVector normal(n, Integer(0));
  for (std::size_t col = 0; col < n; ++col) {
    IntMatrix minor(n - 1, n - 1);
    for (std::size_t r = 0; r + 1 < n; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < n; ++c) {
        if (c == col) continue;
        minor(r, cc++) = vectors[r][c];
      }
    }
    Integer d = integer_determinant(minor);
    // expansion of det([vectors; x]) along the last row
    if ((n - 1 + col) % 2 == 1) d = -d;
    normal[col] = std::move(d);
  }
  return normal;
}

// ---- representations ---------------------------------------------------------

std::optional<RatVector> nonnegative_representation(std::span<const IntVector> generators,
                                                    const RatVector& x) {
  if (is_zero(x)) return RatVector(generators.size(), Rational(0));
  if (generators.empty()) return std::nullopt;
  const std::size_t r = rank(generators);
  std::optional<RatVector> found;
  for_each_subset(generators.size(), r, [&](const std::vector<std::size_t>& idx) {
    const auto cols = select(generators, idx);
    auto sol = solve_in_columns(std::span<const IntVector>(cols), x);
    if (!sol) return true;
    if (std::any_of(sol->begin(), sol->end(), [](const Rational& q) { return q < 0; })) return true;
    RatVector full(generators.size(), Rational(0));
    for (std::size_t k = 0; k < idx.size(); ++k) full[idx[k]] = (*sol)[k];
    found = std::move(full);
    return false;
  });
  return found;
}

std::optional<Rational> min_height(std::span<const IntVector> generators, const RatVector& x) {
  if (is_zero(x)) return Rational(0);
  if (generators.empty()) return std::nullopt;
  const std::size_t r = rank(generators);
  std::optional<Rational> best;
  for_each_subset(generators.size(), r, [&](const std::vector<std::size_t>& idx) {
    const auto cols = select(generators, idx);
    auto sol = solve_in_columns(std::span<const IntVector>(cols), x);
    if (!sol) return true;
    Rational s = 0;
    for (const auto& q : *sol) {
      if (q < 0) return true;
      s += q;
    }
    if (!best || s < *best) best = s;
    return true;
  });
  return best;
}

// ---- Cone --------------------------------------------------------------------

std::vector<IntVector> extreme_generators(std::span<const IntVector> generators) {
  std::set<IntVector> unique;
  for (const auto& g : generators) {
    if (is_zero(g)) throw DomainError("cone generator is zero");
    unique.insert(primitive_vector(g));
  }
  std::vector<IntVector> gens(unique.begin(), unique.end());
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<IntVector> others;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != j) others.push_back(gens[i]);
    RatVector neg = to_rational(gens[j]);
    for (auto& q : neg) q = -q;
    if (nonnegative_representation(others, neg)) throw DomainError("cone is not pointed");
  }
  std::vector<IntVector> extreme;
  for (std::size_t j = 0; j < gens.size(); ++j) {
    std::vector<IntVector> others;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (i != j) others.push_back(gens[i]);
    if (!nonnegative_representation(others, to_rational(gens[j]))) extreme.push_back(gens[j]);
  }
  std::sort(extreme.begin(), extreme.end());
  return extreme;
}

std::vector<IntVector> extreme_generators(const Cone& c) { return c.generators(); }

Cone::Cone(std::size_t dim, std::vector<IntVector> generators) : dim_(dim), rank_(0) {
  if (generators.empty()) throw DomainError("cone needs at least one generator");
  for (const auto& g : generators)
    if (g.size() != dim) throw DimensionError("cone generator has wrong dimension");
  generators_ = extreme_generators(generators);
  rank_ = unicover::rank(std::span<const IntVector>(generators_));
}

bool Cone::contains(const RatVector& x) const {
  require_dim(x, dim_, "Cone::contains");
  return nonnegative_representation(generators_, x).has_value();
}

bool contains_point(const Cone& c, const RatVector& p) { return c.contains(p); }

// ---- SimplicialCone ----------------------------------------------------------

SimplicialCone::SimplicialCone(std::vector<IntVector> generators, bool canonical_order) {
  const std::size_t n = generators.size();
  if (n == 0) throw DomainError("simplicial cone needs generators");
  for (auto& g : generators) {
    if (g.size() != n) throw DomainError("simplicial cone: generator count must equal dimension");
    g = primitive_vector(g);
  }
  if (canonical_order) std::sort(generators.begin(), generators.end());
  generators_ = std::move(generators);
  det_ = integer_determinant(IntMatrix::from_columns(generators_));
  if (det_ == 0) throw DomainError("simplicial cone: generators are linearly dependent");
  adjugate_ = IntMatrix(n, n);
  if (n == 1) {
    adjugate_(0, 0) = 1;
    return;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<IntVector> rest;
    for (std::size_t j = 0; j < n; ++j)
      if (j != i) rest.push_back(generators_[j]);
    IntVector normal = hyperplane_normal(rest);
    if (dot(normal, generators_[i]) != det_) normal = Integer(-1) * normal;
    for (std::size_t c = 0; c < n; ++c) adjugate_(i, c) = normal[c];
  }
}

IntVector SimplicialCone::scaled_coefficients(const IntVector& x) const { return adjugate_ * x; }

RatVector SimplicialCone::coefficients(const IntVector& x) const {
  const IntVector s = scaled_coefficients(x);
  RatVector out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out[i] = Rational(s[i], det_);
    out[i].canonicalize();
  }
  return out;
}

RatVector SimplicialCone::coefficients(const RatVector& x) const {
  if (x.size() != dim()) throw DomainError("SimplicialCone::coefficients: dimension mismatch");
  RatVector out(dim(), Rational(0));
  for (std::size_t i = 0; i < dim(); ++i) {
    Rational s = 0;
    for (std::size_t c = 0; c < dim(); ++c) s += adjugate_(i, c) * x[c];
    out[i] = s / det_;
  }
  return out;
}

Rational SimplicialCone::height(const RatVector& x) const {
  Rational h = 0;
  for (const auto& q : coefficients(x)) h += q;
  return h;
}

bool SimplicialCone::contains(const IntVector& x) const {
  if (x.size() != dim()) throw DomainError("SimplicialCone::contains: dimension mismatch");
  const int sign = sgn(det_);
  for (std::size_t i = 0; i < dim(); ++i) {
    Integer s = 0;
    for (std::size_t c = 0; c < dim(); ++c) s += adjugate_(i, c) * x[c];
    if (sgn(s) * sign < 0) return false;
  }
  return true;
}

bool SimplicialCone::contains(const RatVector& x) const {
  if (x.size() != dim()) throw DomainError("SimplicialCone::contains: dimension mismatch");
  const Integer den = common_denominator(x);
  IntVector scaled(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) scaled[i] = x[i].get_num() * (den / x[i].get_den());
  return contains(scaled);
}

std::vector<IntVector> SimplicialCone::sorted_generators() const {
  auto g = generators_;
  std::sort(g.begin(), g.end());
  return g;
}

Cone SimplicialCone::as_cone() const { return Cone(dim(), generators_); }

// ---- LatticeSimplex ----------------------------------------------------------

LatticeSimplex::LatticeSimplex(std::vector<RatVector> vertices) {
  if (vertices.empty()) throw DomainError("simplex needs at least one vertex");
  const std::size_t n = vertices.front().size();
  for (const auto& v : vertices)
    if (v.size() != n) throw DimensionError("simplex vertices have different dimensions");
  std::sort(vertices.begin(), vertices.end());
  std::vector<RatVector> edges;
  for (std::size_t i = 1; i < vertices.size(); ++i) edges.push_back(vertices[i] - vertices[0]);
  if (rank(std::span<const RatVector>(edges)) != edges.size())
    throw DomainError("simplex vertices are affinely dependent");
  vertices_ = std::move(vertices);
}

LatticeSimplex LatticeSimplex::from_integer(std::span<const IntVector> vertices) {
  std::vector<RatVector> v;
  v.reserve(vertices.size());
  for (const auto& x : vertices) v.push_back(to_rational(x));
  return LatticeSimplex(std::move(v));
}

bool LatticeSimplex::is_lattice() const {
  return std::all_of(vertices_.begin(), vertices_.end(), [](const RatVector& v) { return is_integral(v); });
}

std::vector<IntVector> LatticeSimplex::integer_vertices() const {
  std::vector<IntVector> out;
  out.reserve(vertices_.size());
  for (const auto& v : vertices_) out.push_back(to_integer(v));
  return out;
}

std::optional<RatVector> LatticeSimplex::barycentric(const RatVector& p) const {
  if (p.size() != ambient_dim()) throw DomainError("LatticeSimplex::barycentric: dimension mismatch");
  std::vector<RatVector> edges;
  for (std::size_t i = 1; i < vertices_.size(); ++i) edges.push_back(vertices_[i] - vertices_[0]);
  const RatVector rhs = p - vertices_[0];
  RatVector lambda(vertices_.size(), Rational(0));
  if (edges.empty()) {
    if (!is_zero(rhs)) return std::nullopt;
    lambda[0] = 1;
    return lambda;
  }
  auto sol = solve_in_columns(std::span<const RatVector>(edges), rhs);
  if (!sol) return std::nullopt;
  Rational rest = 1;
  for (std::size_t i = 0; i < sol->size(); ++i) {
    lambda[i + 1] = (*sol)[i];
    rest -= (*sol)[i];
  }
  lambda[0] = rest;
  return lambda;
}

bool LatticeSimplex::contains(const RatVector& p, const Rational& scale) const {
  if (p.size() != ambient_dim()) throw DomainError("LatticeSimplex::contains: dimension mismatch");
  if (scale < 0) throw DomainError("LatticeSimplex::contains: negative scale");
  if (scale == 0) return is_zero(p);
  const RatVector q = scale == 1 ? p : (Rational(1) / scale) * p;
  auto lambda = barycentric(q);
  if (!lambda) return false;
  return std::all_of(lambda->begin(), lambda->end(), [](const Rational& x) { return x >= 0; });
}

bool contains_point(const LatticeSimplex& s, const Rational& scale, const RatVector& p) {
  return s.contains(p, scale);
}

// ---- LatticePolytope ---------------------------------------------------------

LatticePolytope::LatticePolytope(std::size_t dim, std::vector<IntVector> points) : dim_(dim) {
  if (points.empty()) throw DomainError("polytope needs at least one point");
  std::vector<IntVector> lifted;
  for (const auto& p : points) {
    if (p.size() != dim) throw DimensionError("polytope point has wrong dimension");
    IntVector h = p;
    h.push_back(1);
    lifted.push_back(std::move(h));
  }
  for (auto& h : extreme_generators(lifted)) {
    h.pop_back();
    vertices_.push_back(std::move(h));
  }
  std::sort(vertices_.begin(), vertices_.end());
}

bool LatticePolytope::full_dimensional() const {
  std::vector<IntVector> lifted;
  for (const auto& v : vertices_) {
    IntVector h = v;
    h.push_back(1);
    lifted.push_back(std::move(h));
  }
  return rank(std::span<const IntVector>(lifted)) == dim_ + 1;
}

// ---- AffineLattice -----------------------------------------------------------

AffineLattice::AffineLattice(RatVector origin, std::vector<RatVector> basis)
    : origin_(std::move(origin)), basis_(std::move(basis)) {
  for (const auto& b : basis_)
    if (b.size() != origin_.size()) throw DimensionError("affine lattice basis has wrong dimension");
  if (unicover::rank(std::span<const RatVector>(basis_)) != basis_.size())
    throw DomainError("affine lattice basis is linearly dependent");
}

AffineLattice AffineLattice::of_simplex(const LatticeSimplex& s) {
  const auto& v = s.vertices();
  std::vector<RatVector> basis;
  for (std::size_t i = 1; i < v.size(); ++i) basis.push_back(v[i] - v[0]);
  return AffineLattice(v[0], std::move(basis));
}

bool AffineLattice::contains(const RatVector& p) const {
  if (p.size() != origin_.size()) throw DomainError("AffineLattice::contains: dimension mismatch");
  const RatVector diff = p - origin_;
  if (basis_.empty()) return is_zero(diff);
  auto sol = solve_in_columns(std::span<const RatVector>(basis_), diff);
  return sol && is_integral(*sol);
}

bool AffineLattice::same_as(const AffineLattice& other) const {
  if (rank() != other.rank() || origin_.size() != other.origin_.size()) return false;
  if (!contains(other.origin_)) return false;
  for (const auto& b : other.basis_)
    if (!contains(origin_ + b)) return false;
  for (const auto& b : basis_)
    if (!other.contains(other.origin_ + b)) return false;
  return true;
}

// ---- lattice points -----------------------------------------------------------

std::vector<BoxPoint> box_points_with_coefficients(std::span<const IntVector> generators) {
  const std::size_t n = generators.size();
  for (const auto& g : generators)
    if (g.size() != n) throw DomainError("lattice_points_in_box: need n generators in Z^n");
  if (n == 0) return {BoxPoint{}};
  IntMatrix gmat = IntMatrix::from_columns(generators);
  Integer det = integer_determinant(gmat);
  if (det == 0) throw DomainError("lattice_points_in_box: generators are linearly dependent");

  // adjugate rows via hyperplane normals, normalized to a positive determinant
  IntMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<IntVector> rest;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) rest.push_back(generators[j]);
      IntVector normal = hyperplane_normal(rest);
      if (dot(normal, generators[i]) != det) normal = Integer(-1) * normal;
      for (std::size_t c = 0; c < n; ++c) adj(i, c) = normal[c];
    }
  }
  if (det < 0) {
    det = -det;
    for (std::size_t i = 0; i < n; ++i) adj.negate_row(i);
  }

  // coset representatives of Z^n / (generator lattice) from the Hermite form
  const HermiteForm hf = hermite_normal_form(IntMatrix::from_rows(generators));
  std::vector<Integer> radix(n);
  for (std::size_t i = 0; i < n; ++i) radix[i] = hf.h(i, i);

  std::vector<BoxPoint> out;
  IntVector rep(n, Integer(0));
  while (true) {
    const IntVector scaled = adj * rep;
    BoxPoint bp;
    bp.point = rep;
    bp.coefficients.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      Integer q, r;
      mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), scaled[i].get_mpz_t(), det.get_mpz_t());
      if (q != 0)
        for (std::size_t c = 0; c < n; ++c) bp.point[c] -= q * generators[i][c];
      bp.coefficients[i] = Rational(r, det);
      bp.coefficients[i].canonicalize();
    }
    out.push_back(std::move(bp));
    std::size_t k = 0;
    while (k < n) {
      ++rep[k];
      if (rep[k] < radix[k]) break;
      rep[k] = 0;
      ++k;
    }
    if (k == n) break;
  }
  std::sort(out.begin(), out.end(), [](const BoxPoint& a, const BoxPoint& b) { return a.point < b.point; });
  return out;
}

std::vector<IntVector> lattice_points_in_box(std::span<const IntVector> generators) {
  std::vector<IntVector> out;
  for (auto& bp : box_points_with_coefficients(generators)) out.push_back(std::move(bp.point));
  return out;
}

std::vector<IntVector> lattice_points(const LatticeSimplex& s) {
  if (!s.is_lattice()) throw DomainError("lattice_points: simplex is not a lattice simplex");
  const auto verts = s.integer_vertices();
  const IntVector& base = verts.front();
  if (verts.size() == 1) return verts;
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < verts.size(); ++i) edges.push_back(verts[i] - base);
  const auto basis = saturated_basis(edges);
  std::vector<RatVector> basis_q;
  for (const auto& b : basis) basis_q.push_back(to_rational(b));

  // edges in coordinates of the saturated basis of their span
  std::vector<IntVector> local;
  for (const auto& e : edges) {
    auto c = solve_in_columns(std::span<const RatVector>(basis_q), to_rational(e));
    if (!c) throw DomainError("lattice_points: internal basis mismatch");
    local.push_back(to_integer(*c));
  }

  std::vector<IntVector> out = verts;
  for (const auto& bp : box_points_with_coefficients(local)) {
    Rational sum = 0;
    for (const auto& q : bp.coefficients) sum += q;
    if (sum == 0 || sum > 1) continue;
    IntVector p = base;
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (bp.point[k] != 0)
        for (std::size_t c = 0; c < p.size(); ++c) p[c] += bp.point[k] * basis[k][c];
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_empty_simplex(const LatticeSimplex& s) { return lattice_points(s).size() == s.vertices().size(); }

LatticeSimplex base_simplex(const SimplicialCone& c) {
  std::vector<IntVector> v;
  v.emplace_back(c.dim(), Integer(0));
  for (const auto& g : c.generators()) v.push_back(g);
  return LatticeSimplex::from_integer(v);
}

Integer simplex_multiplicity(const LatticeSimplex& s) {
  if (!s.is_lattice()) throw DomainError("simplex_multiplicity: simplex is not a lattice simplex");
  const auto verts = s.integer_vertices();
  if (verts.size() == 1) return 1;
  std::vector<IntVector> edges;
  for (std::size_t i = 1; i < verts.size(); ++i) edges.push_back(verts[i] - verts[0]);
  const SmithForm sf = smith_normal_form(IntMatrix::from_rows(edges));
  Integer prod = 1;
  for (const auto& d : sf.diagonal) {
    if (d == 0) throw DomainError("simplex_multiplicity: degenerate vertex set");
    prod *= d;
  }
  return prod;
}

}  // namespace unicover
