#pragma once

// Finite-type graded-commutative algebras over Q presented by a hereditary
// family of admissible monomials, their degreewise quotients by homogeneous
// ideals, derivations, cohomology ranks and algebra maps.

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "toricmorgan/linear_algebra.hpp"
#include "toricmorgan/rational.hpp"

namespace toricmorgan {

struct GeneratorSpec {
  std::string name;
  int degree = 2;  ///< odd degree means odd parity
  bool odd() const { return degree % 2 != 0; }
};

/// Exponent per generator; odd generators carry 0 or 1.
using Monomial = std::vector<std::uint16_t>;
/// Finite linear combination of monomials, zero coefficients never stored.
using Element = std::map<Monomial, Rational>;

void add_to(Element& acc, const Element& e, const Rational& factor = 1);
void add_term(Element& acc, const Monomial& m, const Rational& c);
Element scaled(const Element& e, const Rational& factor);
Element operator+(const Element& a, const Element& b);
Element operator-(const Element& a, const Element& b);

struct MonomialHash {
  size_t operator()(const Monomial& m) const noexcept;
};

/// The free graded-commutative algebra on the generators modulo the monomials
/// rejected by `rule`. The rule must be hereditary: divisors of admissible
/// monomials are admissible.
class MonomialAlgebra {
 public:
  using Rule = std::function<bool(const Monomial&)>;

  explicit MonomialAlgebra(std::vector<GeneratorSpec> generators, Rule rule = {});

  size_t num_generators() const { return generators_.size(); }
  const GeneratorSpec& generator(size_t i) const { return generators_[i]; }
  const std::vector<GeneratorSpec>& generators() const { return generators_; }
  std::optional<size_t> find_generator(const std::string& name) const;

  int degree(const Monomial& m) const;
  bool admissible(const Monomial& m) const;

  /// Admissible monomials of total degree d, sorted; cached, thread safe.
  const std::vector<Monomial>& degree_basis(int d) const;
  std::optional<std::uint32_t> index_in_degree(const Monomial& m) const;

  Monomial unit_monomial() const { return Monomial(generators_.size(), 0); }
  Element one() const;
  Element gen(size_t i) const;
  Element gen(const std::string& name) const;

  /// Koszul sign (+1/-1) and product, or 0 when the product vanishes.
  int multiply_monomials(const Monomial& a, const Monomial& b, Monomial& out) const;
  Element multiply(const Element& a, const Element& b) const;
  Element power(const Element& a, unsigned k) const;

  /// Degree of a nonzero homogeneous element; nullopt for zero or mixed degree.
  std::optional<int> homogeneous_degree(const Element& e) const;

  std::string to_string(const Monomial& m) const;
  std::string to_string(const Element& e) const;

  /// Inadmissible monomials of degree d all of whose proper divisors are admissible.
  std::vector<Monomial> minimal_inadmissible(int d) const;

 private:
  struct DegreeCache {
    std::vector<Monomial> basis;
    std::unordered_map<Monomial, std::uint32_t, MonomialHash> index;
  };
  const DegreeCache& cache(int d) const;

  std::vector<GeneratorSpec> generators_;
  Rule rule_;
  mutable std::mutex mutex_;
  mutable std::map<int, std::unique_ptr<DegreeCache>> cache_;
};

/// A graded quotient A / (generators), computed degree by degree up to dmax.
class DegreewiseQuotient {
 public:
  DegreewiseQuotient(std::shared_ptr<const MonomialAlgebra> ambient, std::vector<Element> generators, int dmax,
                     bool parallel = false);

  const MonomialAlgebra& ambient() const { return *ambient_; }
  std::shared_ptr<const MonomialAlgebra> ambient_ptr() const { return ambient_; }
  const std::vector<Element>& ideal_generators() const { return generators_; }
  int dmax() const { return dmax_; }

  size_t dim(int d) const;
  std::vector<size_t> dims() const;
  size_t ideal_dim(int d) const;
  /// Coset representatives (ambient monomials) of degree d.
  const std::vector<Monomial>& basis(int d) const;

  /// Coordinates of the class of a homogeneous element in basis(d).
  SparseVector coordinates(const Element& e, int d) const;
  Element from_coordinates(const SparseVector& v, int d) const;
  Element normal_form(const Element& e) const;
  bool is_zero(const Element& e) const;
  Element multiply(const Element& a, const Element& b) const;

 private:
  struct Degree {
    std::vector<bool> killed;  ///< indexed by ambient degree_basis position
    RowEchelon span;
    std::vector<Monomial> reps;
    std::vector<std::int32_t> rep_of;  ///< ambient position to rep index or -1
  };
  void build_degree(int d);
  const Degree& degree_data(int d) const;

  std::shared_ptr<const MonomialAlgebra> ambient_;
  std::vector<Element> generators_;
  std::vector<int> generator_degrees_;
  int dmax_;
  std::vector<Degree> degrees_;
};

/// A degree +1 derivation given on generators and extended by the graded Leibniz rule.
class Derivation {
 public:
  Derivation(std::shared_ptr<const MonomialAlgebra> algebra, std::vector<Element> images);

  Element apply(const Monomial& m) const;
  Element apply(const Element& e) const;
  const Element& image(size_t generator) const { return images_[generator]; }

 private:
  std::shared_ptr<const MonomialAlgebra> algebra_;
  std::vector<Element> images_;
};

struct CohomologySummary {
  std::vector<size_t> dims;          ///< H^d for d = 0 .. dmax-1
  std::vector<size_t> chain_dims;    ///< dim of the complex in degree d
  std::vector<size_t> ranks;         ///< rank of d: C^d -> C^(d+1)
  bool d_squared_zero = true;
};

/// Null when der sends every ideal generator (and every minimal inadmissible
/// monomial) within the truncation into the ideal; otherwise a witness.
std::optional<std::string> derivation_defect(const DegreewiseQuotient& q, const Derivation& der);
bool check_derivation(const DegreewiseQuotient& q, const Derivation& der);

/// Exact cohomology dims in degrees below q.dmax(). Throws MathError if der
/// does not preserve the ideal.
CohomologySummary cohomology(const DegreewiseQuotient& q, const Derivation& der, bool check_square = true,
                             bool parallel = false);

/// Algebra map sending source generator i to images[i] in the target.
class AlgebraMap {
 public:
  AlgebraMap(const DegreewiseQuotient& source, const DegreewiseQuotient& target, std::vector<Element> images);

  Element apply(const Monomial& m) const;
  Element apply(const Element& e) const;

  /// Null when relations are preserved (and d commutes, if both derivations
  /// are given); otherwise a witness description.
  std::optional<std::string> defect(const Derivation* source_d = nullptr, const Derivation* target_d = nullptr) const;
  /// Throws MathError with the witness on failure.
  void verify(const Derivation* source_d = nullptr, const Derivation* target_d = nullptr) const;

 private:
  const DegreewiseQuotient* source_;
  const DegreewiseQuotient* target_;
  std::vector<Element> images_;
};

}  // namespace toricmorgan
