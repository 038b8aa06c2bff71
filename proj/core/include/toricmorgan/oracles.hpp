#pragma once

// External-literature formulas, used only as independent ground truth by the
// tests and by `verify`. The computation pipeline never calls into this file.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "toricmorgan/arrangement.hpp"
#include "toricmorgan/fan.hpp"

namespace toricmorgan::oracles {

/// Coefficients of 1, q, q^2, ...
using Poincare = std::vector<Integer>;

/// Even Betti numbers from the h-vector, odd ones zero; length 2n+1.
std::vector<size_t> h_vector_betti(const Fan& fan);

Poincare kunneth(const std::vector<Poincare>& factors);

/// (1+q)^n.
Poincare torus_poincare(size_t n);

/// Coefficient of x^a y^b at key (a,b).
using Bivariate = std::map<std::pair<unsigned, unsigned>, Integer>;

struct ArithmeticMatroidData {
  size_t ambient_rank = 0;
  std::vector<IntVector> chars;
  std::vector<Rational> phases;

  /// Number of connected components of the intersection of the layers in S.
  size_t multiplicity(const std::vector<size_t>& subset) const;
  size_t rank(const std::vector<size_t>& subset) const;
};

/// Rejects (InputError) layers whose Gamma is not of rank one.
ArithmeticMatroidData divisorial_data(const Arrangement& arrangement);

Bivariate arithmetic_tutte(const ArithmeticMatroidData& data);

struct DivisorialOracle {
  Bivariate tutte;
  Poincare poincare;
  /// False when the substitution is not a polynomial with nonnegative
  /// coefficients and constant term 1.
  bool valid = false;
};

/// (1+q)^{n-r} q^r M((2q+1)/q, 0) with r the rank of the ground set; the torus
/// factor accounts for directions no character sees.
DivisorialOracle poincare_divisorial(const ArithmeticMatroidData& data);

/// Runs the formula on C* minus a point and C* minus {1,-1}, and on a divisor
/// in (C*)^2 against the Kunneth product.
bool self_check();

/// (C*)^n minus a point; length 2n+1.
std::vector<size_t> punctured_torus_betti(size_t n);

/// The complex line minus k points: (1, k).
std::vector<size_t> punctured_line_betti(size_t k);

/// Betti vector padded or truncated to `length`; throws MathError on negative coefficients.
std::vector<size_t> as_betti(const Poincare& p, size_t length);

std::string to_string(const Poincare& p);

}  // namespace toricmorgan::oracles
