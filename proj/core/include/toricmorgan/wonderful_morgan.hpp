#pragma once

// The model N_F = C_F (x) B / Theta_F of the complement of a toric
// arrangement, computed over a fan compatible with the arrangement, together
// with the presentation of H*(Y) for the wonderful model Y, its strata, and the
// direct-sum Morgan algebra used as a cross-check.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "toricmorgan/arrangement.hpp"
#include "toricmorgan/fan.hpp"
#include "toricmorgan/graded_algebra.hpp"
#include "toricmorgan/toric_dga.hpp"

namespace toricmorgan {

/// Basis of Gamma_i for a pair G_i strictly inside G_j. The first sub_rank rows
/// are a basis of Gamma_j; j == m stands for the whole variety (Gamma = 0).
struct PairBasis {
  size_t i = 0;
  size_t j = 0;
  IntMatrix rows;
  size_t sub_rank = 0;

  std::vector<IntVector> complement() const;
};

struct EqualSignBases {
  std::vector<PairBasis> pairs;
  std::vector<IntVector> char_set;

  const PairBasis& find(size_t i, size_t j) const;
};

/// variant 0 extends bases by HNF completion; variant 1 is a different valid
/// choice (complement rows negated and sheared by the sub-basis).
EqualSignBases equal_sign_bases(const CombinatorialData& data, int variant = 0);

struct CompatibleFan {
  Fan fan;
  EqualSignBases bases;
};

enum class SeedFan { ProductOfLines, ProjectiveSpace };

/// Null when `fan` is smooth projective, every basis row is equal-sign, every
/// cone lies in or misses each V_Gamma, and each F_Gamma is smooth and complete.
std::optional<std::string> compatibility_defect(const Fan& fan, const CombinatorialData& data,
                                                const EqualSignBases& bases);

/// Refines the seed by every character in the bases (plus `extra_chars`) and
/// resolves. Throws MathError if the result is not compatible.
CompatibleFan build_compatible_fan(const CombinatorialData& data, const EqualSignBases& bases,
                                   SeedFan seed = SeedFan::ProductOfLines,
                                   const std::vector<IntVector>& extra_chars = {});

/// Checks an externally supplied fan (for instance a refinement) and wraps it.
CompatibleFan make_compatible(const Fan& fan, const CombinatorialData& data, const EqualSignBases& bases);

/// Where the generator families start inside an ambient algebra.
struct Layout {
  size_t num_rays = 0;
  size_t m = 0;
  size_t x = 0;
  size_t tau = SIZE_MAX;
  size_t t = SIZE_MAX;
  size_t kappa = SIZE_MAX;
};

/// Coefficients a_k of P(t) = sum_k a_k t^k = prod (t - chi^-) over the
/// complement rows of the pair basis, as elements of the given algebra.
std::vector<Element> p_coefficients(const PairBasis& pair, const Fan& fan, const MonomialAlgebra& algebra,
                                    size_t x_offset = 0);
Element p_substitute(const std::vector<Element>& coefficients, const MonomialAlgebra& algebra, const Element& t);
std::string p_polynomial_string(const PairBasis& pair, const Fan& fan);

/// sum over h with G_h inside G_i (including i) of -t_h.
Element minus_t_sum(const CombinatorialData& data, size_t i, const MonomialAlgebra& algebra, const Layout& layout);

/// F(i,j) = P^{G_j}_{G_i}(sum_{h in B_i} -t_h) t_j with t_{m+1} = 1.
Element f_polynomial(const CompatibleFan& cf, const CombinatorialData& data, size_t i, size_t j,
                     const MonomialAlgebra& algebra, const Layout& layout);

struct PresentationI {
  std::shared_ptr<const MonomialAlgebra> ambient;  ///< x_c then t_1..t_m
  Layout layout;
  std::vector<Element> xi;
  std::vector<Element> family1;  ///< t_i x_c, c outside V_{Gamma_i}
  std::vector<Element> family2;  ///< t_s t_r, incomparable
  std::vector<Element> family3;  ///< F(i,j)

  std::vector<Element> all() const;
};

PresentationI ideal_I(const CompatibleFan& cf, const CombinatorialData& data);

/// Graded dims of B_F[t]/I in degrees 0..2n. Throws MathError if degrees
/// 2n+1, 2n+2 do not vanish.
std::vector<size_t> y_cohomology(const CompatibleFan& cf, const CombinatorialData& data);

struct NestedPair {
  std::vector<size_t> flag;  ///< increasing: G_flag[0] inside G_flag[1] ...
  ConeIndices cone;

  size_t codim() const { return cone.size() + flag.size(); }
};

std::vector<NestedPair> nested_pairs(const CompatibleFan& cf, const CombinatorialData& data);
bool is_nested_pair(const CompatibleFan& cf, const CombinatorialData& data, const NestedPair& pair);

/// Graded dims of H*(Y_(flag,C)) in degrees 0..2(n - codim). With `redundant`
/// the relations that already follow from the others are added as well.
std::vector<size_t> stratum_cohomology(const NestedPair& pair, const CompatibleFan& cf, const CombinatorialData& data,
                                       bool redundant = false);

/// Graded dims of the direct sum of the strata, H^k of a stratum placed in degree k + codim.
std::vector<size_t> morgan_direct(const CompatibleFan& cf, const CombinatorialData& data);

/// The algebra B = Q[t] (x) Lambda(kappa) / K with d(kappa_j) = t_j.
struct BAlgebra {
  std::shared_ptr<const MonomialAlgebra> algebra;
  std::shared_ptr<const Derivation> d;
};
BAlgebra build_B_algebra(const CombinatorialData& data);

struct ThetaFamilies {
  bool family1 = true;
  bool family2 = true;
  bool family3 = true;
};

struct ThetaIdeal {
  std::vector<Element> family1;
  std::vector<Element> family2;
  std::vector<Element> family3;
};

struct MorganN {
  CompatibleFan cfan;
  std::shared_ptr<const MonomialAlgebra> ambient;  ///< x_c, tau_c, t_i, kappa_i
  Layout layout;
  std::shared_ptr<const Derivation> d;
  std::vector<Element> xi;
  ThetaIdeal theta;
  std::unique_ptr<DegreewiseQuotient> quotient;
};

/// Degrees are computed up to dmax (default 2n+3) so that cohomology is exact through 2n+2.
MorganN build_N(const CompatibleFan& cf, const CombinatorialData& data, ThetaFamilies families = {}, int dmax = -1,
                bool parallel = false);

struct BettiTable {
  size_t n = 0;
  std::vector<size_t> betti;        ///< H^d(N_F), d = 0..2n
  std::vector<size_t> above;        ///< H^d(N_F) for d = 2n+1, 2n+2
  std::vector<size_t> chain_dims;   ///< dim N_F^d for every computed degree
  bool d_squared_zero = true;

  std::string poincare() const;
};

/// With `strict`, nonzero classes above 2n or d^2 != 0 throw MathError.
BettiTable betti_of(const MorganN& model, bool strict = true, bool parallel = false);

struct PipelineOptions {
  SeedFan seed = SeedFan::ProductOfLines;
  int basis_variant = 0;
  ThetaFamilies families;
  bool parallel = false;
  bool strict = true;
};

/// Saturation, combinatorial data, compatible fan, N_F and its cohomology.
BettiTable betti(const Arrangement& arrangement, const PipelineOptions& options = {});
BettiTable betti(const CombinatorialData& data, const PipelineOptions& options = {});

/// Phi: N_F -> N_G for a refinement G of F (same bases); identity on t, kappa.
AlgebraMap phi_map(const MorganN& f, const MorganN& g);

/// A stellar subdivision of F at the sum of the rays of its first 2-cone; F itself in dimension 1.
Fan elementary_refinement(const Fan& fan);

}  // namespace toricmorgan
