#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace toricmorgan {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

/// Bad input: malformed files, violated preconditions on user data.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A mathematical postcondition failed. Always a hard error.
class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// num/den in lowest terms. mpq_class(num, den) alone does not reduce.
Rational ratio(long num, long den);

/// Representative of q modulo 1 in [0,1).
Rational reduce_mod_one(const Rational& q);

Integer floor_div(const Rational& q);

Integer gcd_of(const IntVector& v);

/// v divided by the gcd of its entries; zero vector stays zero.
IntVector primitive(const IntVector& v);

/// Rational vector scaled to a primitive integer vector with the same direction.
IntVector primitive(const RatVector& v);

Integer dot(const IntVector& a, const IntVector& b);
Rational dot(const IntVector& a, const RatVector& b);

bool is_zero(const IntVector& v);

std::string to_string(const Integer& z);
std::string to_string(const Rational& q);
std::string to_string(const IntVector& v, const char* sep = " ");

}  // namespace toricmorgan
