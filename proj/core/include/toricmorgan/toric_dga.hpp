#pragma once

// Algebras attached to a smooth projective fan: the Stanley-Reisner algebra
// A_F, B_F = A_F/(xi), colon algebras, the acyclic DGA D_F on x_c, tau_c with
// d(tau_c) = x_c and its quotient C_F, plus refinement maps and evaluation of
// elements as piecewise polynomial functions.

#include <cstdint>
#include <memory>
#include <unordered_set>

#include "toricmorgan/fan.hpp"
#include "toricmorgan/graded_algebra.hpp"

namespace toricmorgan {

/// Cones of a fan as bitmasks over ray indices (at most 64 rays).
class FaceSet {
 public:
  explicit FaceSet(const Fan& fan);
  bool contains(std::uint64_t mask) const { return faces_.count(mask) != 0; }

 private:
  std::unordered_set<std::uint64_t> faces_;
};

std::uint64_t cone_mask(const ConeIndices& cone);

/// Generators x_0 .. x_{N-1} (degree 2), one per ray in fan order.
std::shared_ptr<const MonomialAlgebra> build_A(const Fan& fan);

/// Admissible monomials: support together with the rays of `cone` spans a cone.
std::shared_ptr<const MonomialAlgebra> build_A_colon(const Fan& fan, const ConeIndices& cone);

/// xi_j = sum_c <l_j, c> x_c for the rows l_j of `basis` (identity when empty).
/// The x-generators of `algebra` start at `x_offset`.
std::vector<Element> xi_elements(const Fan& fan, const MonomialAlgebra& algebra, const IntMatrix& basis = {},
                                 size_t x_offset = 0);

DegreewiseQuotient build_B(const Fan& fan, int dmax = -1, const IntMatrix& basis = {});
DegreewiseQuotient build_B_colon(const Fan& fan, const ConeIndices& cone, int dmax = -1);

/// Rank of A_{C,F} as a module over Q[xi], read off as dim_Q B_{C,F}.
size_t colon_rank(const Fan& fan, const ConeIndices& cone);

/// D_F: generators x_c (degree 2) then tau_c (degree 1) in ray order.
struct ToricDGA {
  Fan fan;
  std::shared_ptr<const MonomialAlgebra> algebra;
  std::shared_ptr<const Derivation> d;

  size_t num_rays() const { return fan.num_rays(); }
  size_t x(size_t c) const { return c; }
  size_t tau(size_t c) const { return fan.num_rays() + c; }
};

ToricDGA build_D(const Fan& fan);

/// D_F truncated at dmax (no relations beyond the monomial ones).
DegreewiseQuotient d_quotient(const ToricDGA& dga, int dmax);

struct ToricC {
  ToricDGA dga;
  std::unique_ptr<DegreewiseQuotient> quotient;
  std::vector<Element> psi;  ///< psi_j = sum_c <l_j, c> tau_c
};

/// C_F = D_F/(xi) truncated at dmax (default 2n+2).
ToricC build_C(const Fan& fan, int dmax = -1, const IntMatrix& basis = {}, bool parallel = false);

/// The contraction S with Sd + dS = id on positive degrees.
Element homotopy_S(const ToricDGA& dga, const Element& e);

/// Coefficients s_c^F(d) for every ray c of F and ray d of G.
std::vector<RatVector> refinement_coefficients(const Fan& f, const Fan& g);

/// Images of the generators of A_F (x_c) under gamma_G^F, in the algebra of G.
std::vector<Element> gamma_images(const Fan& f, const Fan& g, const MonomialAlgebra& target, size_t x_offset = 0);
/// Images of the generators of D_F (x_c, tau_c) under zeta_G^F.
std::vector<Element> zeta_images(const Fan& f, const Fan& g, const MonomialAlgebra& target, size_t x_offset = 0,
                                 size_t tau_offset = SIZE_MAX);

AlgebraMap gamma_map(const Fan& f, const DegreewiseQuotient& a_f, const Fan& g, const DegreewiseQuotient& a_g);
AlgebraMap zeta_map(const ToricDGA& f, const DegreewiseQuotient& d_f, const ToricDGA& g, const DegreewiseQuotient& d_g);
AlgebraMap chi_map(const ToricC& f, const ToricC& g);

/// Evaluates an element of A_F (x-generators from x_offset) as a function at v.
Rational mu_eval(const Fan& fan, const MonomialAlgebra& algebra, const Element& e, const RatVector& v,
                 size_t x_offset = 0);

/// Equality of a at F and b at G after pushing both to a common refinement.
bool roc_equal(const Fan& f, const Element& a, const Fan& g, const Element& b);

/// chi^- = sum_c min(0, <chi, c>) x_c. Throws InputError unless chi has equal sign on the fan.
Element chi_minus(const Fan& fan, const MonomialAlgebra& algebra, const IntVector& chi, size_t x_offset = 0);

}  // namespace toricmorgan
