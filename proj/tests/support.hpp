#pragma once

#include "unicover/exactmath.hpp"
#include "unicover/geom.hpp"

#include <initializer_list>
#include <random>
#include <vector>

namespace testing {

using unicover::Integer;
using unicover::IntVector;
using unicover::Rational;
using unicover::RatVector;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline RatVector rv(std::initializer_list<long> xs) {
  RatVector v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline std::vector<IntVector> ivs(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<IntVector> out;
  for (auto r : rows) out.push_back(iv(r));
  return out;
}

inline Rational q(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return std::uniform_int_distribution<long>(lo, hi)(rng);
}

inline IntVector random_vector(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  IntVector v(n);
  for (auto& x : v) x = uniform(rng, lo, hi);
  return v;
}

// n random vectors with entries in [lo, hi], redrawn until linearly independent.
inline std::vector<IntVector> random_basis(std::mt19937_64& rng, std::size_t n, long lo, long hi) {
  while (true) {
    std::vector<IntVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(random_vector(rng, n, lo, hi));
    bool zero = false;
    for (const auto& g : gens) zero = zero || unicover::is_zero(g);
    if (zero) continue;
    if (unicover::integer_determinant(unicover::IntMatrix::from_columns(gens)) != 0) return gens;
  }
}

// Non-unimodular simplicial cone whose base simplex is empty, multiplicity at most max_mu.
inline unicover::SimplicialCone random_empty_cone(std::mt19937_64& rng, std::size_t n, long bound, long max_mu) {
  while (true) {
    const unicover::SimplicialCone c(random_basis(rng, n, -bound, bound));
    if (c.unimodular() || c.multiplicity() > max_mu) continue;
    if (unicover::is_empty_simplex(unicover::base_simplex(c))) return c;
  }
}

// Random point sum t_i g_i with rational t_i in [0, 1].
inline RatVector random_combination(std::mt19937_64& rng, const std::vector<IntVector>& gens, long den = 97) {
  RatVector p(gens.front().size(), Rational(0));
  for (const auto& g : gens) p = unicover::operator+(p, unicover::operator*(q(uniform(rng, 0, den), den), unicover::to_rational(g)));
  return p;
}

}  // namespace testing
