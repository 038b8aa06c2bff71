#pragma once

#include <initializer_list>
#include <random>
#include <vector>

#include "toricmorgan/arrangement.hpp"
#include "toricmorgan/fan.hpp"

namespace tmtest {

using namespace toricmorgan;

inline IntVector iv(std::initializer_list<long> xs) {
  IntVector out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

inline RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

inline IntMatrix mat(std::initializer_list<std::initializer_list<long>> rows, size_t cols) {
  std::vector<IntVector> rs;
  for (auto r : rows) rs.push_back(iv(r));
  return IntMatrix::from_rows(rs, cols);
}

inline Fan p1() { return projective_space_fan(1); }
inline Fan p1xp1() { return product_fan(p1(), p1()); }

inline size_t ray(const Fan& f, std::initializer_list<long> v) {
  auto i = f.ray_index(iv(v));
  if (!i) throw std::logic_error("ray not in fan");
  return *i;
}

/// A layer given by characters and phases num/den.
inline Layer layer(std::initializer_list<std::initializer_list<long>> chars, std::vector<std::pair<long, long>> phases,
                   size_t dim) {
  std::vector<Rational> ph;
  for (auto [p, q] : phases) ph.push_back(ratio(p, q));
  return Layer(mat(chars, dim), ph);
}

inline Arrangement arrangement(size_t dim, std::vector<Layer> layers) { return Arrangement{dim, std::move(layers)}; }

inline CombinatorialData data_of(const Arrangement& a) { return combinatorial_data(saturate_arrangement(a), a.dim); }

inline Rational random_rational(std::mt19937_64& rng, long span = 9, long den = 7) {
  std::uniform_int_distribution<long> num(-span * den, span * den), d(1, den);
  return ratio(num(rng), d(rng));
}

inline RatVector random_point(std::mt19937_64& rng, size_t n) {
  RatVector v(n);
  for (auto& x : v) x = random_rational(rng);
  return v;
}

inline IntMatrix random_matrix(std::mt19937_64& rng, size_t rows, size_t cols, long bound) {
  std::uniform_int_distribution<long> e(-bound, bound);
  IntMatrix m(rows, cols);
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) m(r, c) = e(rng);
  return m;
}

}  // namespace tmtest
