#include <gtest/gtest.h>

#include "support.hpp"
#include "toricmorgan/wonderful_morgan.hpp"

using namespace tmtest;

namespace {

Arrangement a1() { return arrangement(1, {layer({{1}}, {{0, 1}}, 1)}); }
Arrangement divisor_t1() { return arrangement(2, {layer({{1, 0}}, {{0, 1}}, 2)}); }
Arrangement two_divisors() { return arrangement(2, {layer({{1, 0}}, {{0, 1}}, 2), layer({{0, 1}}, {{0, 1}}, 2)}); }
Arrangement point11() { return arrangement(2, {layer({{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}, 2)}); }
Arrangement point_on_divisor() {
  return arrangement(2, {layer({{1, 0}}, {{0, 1}}, 2), layer({{1, 0}, {0, 1}}, {{0, 1}, {0, 1}}, 2)});
}
Arrangement antidiagonal() { return arrangement(2, {layer({{1, 1}}, {{0, 1}}, 2)}); }

CompatibleFan compatible(const CombinatorialData& data, int variant = 0) {
  return build_compatible_fan(data, equal_sign_bases(data, variant));
}

std::vector<size_t> betti_vector(const Arrangement& a, const PipelineOptions& o = {}) { return betti(a, o).betti; }

bool is_palindrome(const std::vector<size_t>& v) { return std::equal(v.begin(), v.end(), v.rbegin()); }

}  // namespace

TEST(EqualSignBases, Examples) {
  auto d = data_of(a1());
  auto b = equal_sign_bases(d);
  ASSERT_EQ(b.pairs.size(), 1u);
  EXPECT_EQ(b.pairs[0].i, 0u);
  EXPECT_EQ(b.pairs[0].j, 1u);
  EXPECT_EQ(b.pairs[0].rows, IntMatrix::identity(1));
  EXPECT_EQ(b.char_set, (std::vector<IntVector>{iv({1})}));

  auto d3 = data_of(two_divisors());
  ASSERT_EQ(d3.size(), 3u);
  auto b3 = equal_sign_bases(d3);
  EXPECT_EQ(b3.pairs.size(), 5u);  // pt in either divisor, and each element in the whole variety
  for (size_t j : {1u, 2u}) {
    const PairBasis& p = b3.find(0, j);
    EXPECT_EQ(p.sub_rank, 1u);
    EXPECT_EQ(Sublattice::span(p.rows.submatrix_rows(0, 1)), d3.gammas[j]);
    EXPECT_EQ(Sublattice::span(p.rows), Sublattice::full(2));
    EXPECT_EQ(p.complement().size(), 1u);
  }
  EXPECT_THROW(b3.find(1, 2), std::exception);
}

TEST(EqualSignBases, VariantsAreValidBases) {
  for (const auto& a : {point_on_divisor(), two_divisors(), antidiagonal()}) {
    auto d = data_of(a);
    auto v0 = equal_sign_bases(d, 0), v1 = equal_sign_bases(d, 1);
    ASSERT_EQ(v0.pairs.size(), v1.pairs.size());
    for (size_t k = 0; k < v1.pairs.size(); ++k) {
      const auto& p = v1.pairs[k];
      EXPECT_EQ(Sublattice::span(p.rows), d.gammas[p.i]);
      Sublattice sub = p.j == d.size() ? Sublattice(d.dim) : d.gammas[p.j];
      EXPECT_EQ(Sublattice::span(p.rows.submatrix_rows(0, p.sub_rank)), sub);
    }
  }
}

TEST(CompatibleFanBuild, Examples) {
  EXPECT_EQ(compatible(data_of(a1())).fan, p1());
  EXPECT_EQ(compatible(data_of(point11())).fan, p1xp1());
  auto cf = compatible(data_of(antidiagonal()));
  EXPECT_TRUE(equal_sign_check(cf.fan, iv({1, 1})));
  EXPECT_TRUE(validate(cf.fan).ok());
  EXPECT_TRUE(is_refinement(cf.fan, p1xp1()).is_refinement);
  EXPECT_EQ(cf.fan.dim(), 2u);
}

TEST(CompatibleFanBuild, Invariants) {
  for (const auto& a : {point_on_divisor(), two_divisors(), antidiagonal()}) {
    auto d = data_of(a);
    for (SeedFan seed : {SeedFan::ProductOfLines, SeedFan::ProjectiveSpace}) {
      auto cf = build_compatible_fan(d, equal_sign_bases(d), seed);
      EXPECT_FALSE(compatibility_defect(cf.fan, d, cf.bases));
      for (const auto& chi : cf.bases.char_set) EXPECT_TRUE(equal_sign_check(cf.fan, chi));
      for (const auto& g : d.gammas) {
        Sublattice v = kernel_lattice(g.basis());
        EXPECT_TRUE(is_compatible_with_subspace(cf.fan, v));
        EXPECT_TRUE(validate(subfan_in_subspace(cf.fan, v)).ok());
      }
    }
  }
  auto d = data_of(antidiagonal());
  EXPECT_TRUE(compatibility_defect(p1xp1(), d, equal_sign_bases(d)));
  EXPECT_THROW(make_compatible(p1xp1(), d, equal_sign_bases(d)), MathError);
}

TEST(PPolynomial, Examples) {
  auto d = data_of(a1());
  auto cf = compatible(d);
  EXPECT_EQ(p_polynomial_string(cf.bases.pairs[0], cf.fan), "t + x" + std::to_string(ray(cf.fan, {-1})));
  auto a = build_A(cf.fan);
  auto coeffs = p_coefficients(cf.bases.pairs[0], cf.fan, *a);
  ASSERT_EQ(coeffs.size(), 2u);
  EXPECT_EQ(coeffs[1], a->one());
  EXPECT_EQ(coeffs[0], a->gen(ray(cf.fan, {-1})));

  auto d2 = data_of(point_on_divisor());
  ASSERT_EQ(d2.size(), 2u);
  auto cf2 = compatible(d2);
  EXPECT_EQ(cf2.fan, p1xp1());
  const PairBasis& p = cf2.bases.find(0, 1);
  EXPECT_EQ(p_polynomial_string(p, cf2.fan), "t + x" + std::to_string(ray(cf2.fan, {0, -1})));
  auto a2 = build_A(cf2.fan);
  EXPECT_EQ(p_substitute(p_coefficients(p, cf2.fan, *a2), *a2, a2->gen(0)),
            a2->gen(0) + a2->gen(ray(cf2.fan, {0, -1})));

  // the whole-variety pair has a quadratic polynomial
  EXPECT_EQ(p_coefficients(cf2.bases.find(0, 2), cf2.fan, *a2).size(), 3u);
}

TEST(PresentationI, A1Families) {
  auto d = data_of(a1());
  auto cf = compatible(d);
  auto pi = ideal_I(cf, d);
  EXPECT_EQ(pi.family1.size(), 2u);
  EXPECT_TRUE(pi.family2.empty());
  EXPECT_EQ(pi.family3.size(), 1u);
  EXPECT_EQ(pi.all().size(), pi.xi.size() + 3);
}

TEST(YCohomology, Examples) {
  auto d = data_of(a1());
  EXPECT_EQ(y_cohomology(compatible(d), d), (std::vector<size_t>{1, 0, 1}));

  CombinatorialData empty;
  empty.dim = 2;
  auto cf = build_compatible_fan(empty, equal_sign_bases(empty));
  EXPECT_EQ(y_cohomology(cf, empty), build_B(cf.fan).dims());

  auto dp = data_of(point11());
  EXPECT_EQ(y_cohomology(compatible(dp), dp), (std::vector<size_t>{1, 0, 3, 0, 1}));

  auto dd = data_of(two_divisors());
  auto y = y_cohomology(compatible(dd), dd);
  EXPECT_TRUE(is_palindrome(y));
  EXPECT_EQ(y, (std::vector<size_t>{1, 0, 3, 0, 1}));
}

TEST(YCohomology, IdealIndependentOfBases) {
  for (const auto& a : {point_on_divisor(), two_divisors(), antidiagonal()}) {
    auto d = data_of(a);
    auto b0 = equal_sign_bases(d, 0), b1 = equal_sign_bases(d, 1);
    auto cf0 = build_compatible_fan(d, b0, SeedFan::ProductOfLines, b1.char_set);
    auto cf1 = make_compatible(cf0.fan, d, b1);
    auto i0 = ideal_I(cf0, d), i1 = ideal_I(cf1, d);
    const int top = 2 * static_cast<int>(d.dim) + 2;
    DegreewiseQuotient q0(i0.ambient, i0.all(), top), q1(i1.ambient, i1.all(), top);
    for (int deg = 0; deg <= top; ++deg) EXPECT_EQ(q0.ideal_dim(deg), q1.ideal_dim(deg));
    for (const auto& g : i1.all())
      if (i0.ambient->homogeneous_degree(g).value_or(0) <= top) EXPECT_TRUE(q0.is_zero(g));
    for (const auto& g : i0.all())
      if (i1.ambient->homogeneous_degree(g).value_or(0) <= top) EXPECT_TRUE(q1.is_zero(g));
  }
}

TEST(NestedPairs, A1) {
  auto d = data_of(a1());
  auto cf = compatible(d);
  auto pairs = nested_pairs(cf, d);
  ASSERT_EQ(pairs.size(), 4u);
  size_t flagged = 0;
  for (const auto& p : pairs) {
    EXPECT_TRUE(is_nested_pair(cf, d, p));
    if (!p.flag.empty()) {
      ++flagged;
      EXPECT_TRUE(p.cone.empty());
    }
  }
  EXPECT_EQ(flagged, 1u);
  EXPECT_FALSE(is_nested_pair(cf, d, NestedPair{{0}, {0}}));
}

TEST(NestedPairs, FlagsAndIncomparableLayers) {
  auto d = data_of(two_divisors());
  auto cf = compatible(d);
  EXPECT_TRUE(is_nested_pair(cf, d, NestedPair{{0, 1}, {}}));
  EXPECT_FALSE(is_nested_pair(cf, d, NestedPair{{0, 1}, {ray(cf.fan, {0, 1})}}));
  EXPECT_TRUE(is_nested_pair(cf, d, NestedPair{{1}, {ray(cf.fan, {0, 1})}}) ||
              is_nested_pair(cf, d, NestedPair{{2}, {ray(cf.fan, {0, 1})}}));
  EXPECT_FALSE(is_nested_pair(cf, d, NestedPair{{1, 2}, {}}));
  for (const auto& p : nested_pairs(cf, d)) {
    for (size_t k = 0; k + 1 < p.flag.size(); ++k) EXPECT_TRUE(d.strictly_below(p.flag[k], p.flag[k + 1]));
    EXPECT_LE(p.codim(), d.dim);
  }
}

TEST(StrataCohomology, A1) {
  auto d = data_of(a1());
  auto cf = compatible(d);
  for (const auto& p : nested_pairs(cf, d)) {
    auto dims = stratum_cohomology(p, cf, d);
    if (p.flag.empty() && p.cone.empty()) EXPECT_EQ(dims, (std::vector<size_t>{1, 0, 1}));
    else EXPECT_EQ(dims, (std::vector<size_t>{1}));
    EXPECT_EQ(stratum_cohomology(p, cf, d, true), dims);
  }
}

TEST(StrataCohomology, PalindromicAndRedundantRelationsAgree) {
  for (const auto& a : {point_on_divisor(), two_divisors()}) {
    auto d = data_of(a);
    auto cf = compatible(d);
    for (const auto& p : nested_pairs(cf, d)) {
      auto dims = stratum_cohomology(p, cf, d);
      EXPECT_EQ(dims.size(), 2 * (d.dim - p.codim()) + 1);
      EXPECT_EQ(dims[0], 1u);
      EXPECT_TRUE(is_palindrome(dims));
      EXPECT_EQ(stratum_cohomology(p, cf, d, true), dims);
    }
  }
}

TEST(MorganDirect, Examples) {
  auto d = data_of(a1());
  EXPECT_EQ(morgan_direct(compatible(d), d), (std::vector<size_t>{1, 3, 1}));

  CombinatorialData empty;
  empty.dim = 1;
  auto cf = build_compatible_fan(empty, equal_sign_bases(empty));
  EXPECT_EQ(cf.fan, p1());
  EXPECT_EQ(morgan_direct(cf, empty), (std::vector<size_t>{1, 2, 1}));

  CombinatorialData point;
  CompatibleFan zero{Fan::zero(), EqualSignBases{}};
  EXPECT_EQ(morgan_direct(zero, point), (std::vector<size_t>{1}));
}

TEST(BuildN, A1) {
  auto d = data_of(a1());
  auto cf = compatible(d);
  MorganN n = build_N(cf, d);
  EXPECT_EQ(n.theta.family1.size(), 8u);
  EXPECT_EQ(n.theta.family2.size(), 1u);
  EXPECT_TRUE(n.theta.family3.empty());
  auto dims = n.quotient->dims();
  EXPECT_EQ(std::vector<size_t>(dims.begin(), dims.begin() + 3), (std::vector<size_t>{1, 3, 1}));
  for (size_t k = 3; k < dims.size(); ++k) EXPECT_EQ(dims[k], 0u);
  EXPECT_TRUE(check_derivation(*n.quotient, *n.d));
  auto b = betti_of(n);
  EXPECT_EQ(b.betti, (std::vector<size_t>{1, 2, 0}));
  EXPECT_EQ(b.above, (std::vector<size_t>{0, 0}));
  EXPECT_TRUE(b.d_squared_zero);
}

TEST(BuildN, KIdealRelations) {
  auto d = data_of(two_divisors());
  auto b = build_B_algebra(d);
  const auto& alg = *b.algebra;
  // layers 1 and 2 are the incomparable divisors
  ASSERT_FALSE(d.comparable(1, 2));
  const size_t m = d.size();
  auto t = [&](size_t i) { return alg.gen(i); };
  auto kappa = [&](size_t i) { return alg.gen(m + i); };
  EXPECT_TRUE(alg.multiply(t(1), t(2)).empty());
  EXPECT_TRUE(alg.multiply(t(1), kappa(2)).empty());
  EXPECT_TRUE(alg.multiply(kappa(1), kappa(2)).empty());
  EXPECT_FALSE(alg.multiply(t(0), kappa(1)).empty());
  EXPECT_EQ(b.d->apply(kappa(0)), t(0));
}

TEST(BuildN, MatchesMorganDirect) {
  for (const auto& a : {a1(), divisor_t1(), point11(), point_on_divisor(), two_divisors()}) {
    auto d = data_of(a);
    auto cf = compatible(d);
    MorganN n = build_N(cf, d);
    EXPECT_TRUE(check_derivation(*n.quotient, *n.d));
    auto direct = morgan_direct(cf, d);
    for (size_t k = 0; k < direct.size(); ++k) EXPECT_EQ(n.quotient->dim(static_cast<int>(k)), direct[k]);
  }
}

TEST(Betti, Examples) {
  EXPECT_EQ(betti_vector(a1()), (std::vector<size_t>{1, 2, 0}));
  EXPECT_EQ(betti_vector(divisor_t1()), (std::vector<size_t>{1, 3, 2, 0, 0}));
  EXPECT_EQ(betti_vector(point11()), (std::vector<size_t>{1, 2, 1, 1, 0}));
  EXPECT_EQ(betti_vector(two_divisors()), (std::vector<size_t>{1, 4, 4, 0, 0}));
  EXPECT_EQ(betti_vector(point_on_divisor()), (std::vector<size_t>{1, 3, 2, 0, 0}));
  EXPECT_EQ(betti(a1()).poincare(), "1 + 2q");
}

TEST(Betti, ChoiceIndependence) {
  for (const auto& a : {antidiagonal(), point_on_divisor(), two_divisors()}) {
    auto reference = betti_vector(a);
    PipelineOptions projective;
    projective.seed = SeedFan::ProjectiveSpace;
    EXPECT_EQ(betti_vector(a, projective), reference);
    PipelineOptions variant;
    variant.basis_variant = 1;
    EXPECT_EQ(betti_vector(a, variant), reference);
    auto poset = saturate_arrangement(a);
    if (auto alt = poset.alternative_linear_extension())
      EXPECT_EQ(betti(combinatorial_data(*alt, a.dim)).betti, reference);
  }
}

TEST(Betti, DroppingFamiliesChangesTheAnswer) {
  PipelineOptions o;
  o.strict = false;
  o.families.family2 = false;
  EXPECT_NE(betti_vector(a1(), o), (std::vector<size_t>{1, 2, 0}));
  o.families = {};
  o.families.family3 = false;
  EXPECT_NE(betti_vector(point_on_divisor(), o), (std::vector<size_t>{1, 3, 2, 0, 0}));
}

TEST(PhiMap, IdentityRefinement) {
  auto d = data_of(point11());
  auto cf = compatible(d);
  MorganN n = build_N(cf, d);
  AlgebraMap phi = phi_map(n, n);
  EXPECT_NO_THROW(phi.verify(n.d.get(), n.d.get()));
  const auto& alg = *n.ambient;
  for (size_t g = 0; g < alg.num_generators(); ++g)
    EXPECT_EQ(phi.apply(alg.gen(g)), n.quotient->normal_form(alg.gen(g)));
}

TEST(PhiMap, StellarRefinementIsQuasiIsomorphism) {
  auto d = data_of(point11());
  auto cf = compatible(d);
  auto refined = make_compatible(stellar_subdivide(cf.fan, iv({1, 1})), d, cf.bases);
  MorganN nf = build_N(cf, d), ng = build_N(refined, d);
  AlgebraMap phi = phi_map(nf, ng);
  EXPECT_NO_THROW(phi.verify(nf.d.get(), ng.d.get()));
  for (size_t i = 0; i < d.size(); ++i)
    EXPECT_EQ(phi.apply(nf.ambient->gen(nf.layout.t + i)), ng.quotient->normal_form(ng.ambient->gen(ng.layout.t + i)));
  EXPECT_EQ(betti_of(nf).betti, (std::vector<size_t>{1, 2, 1, 1, 0}));
  EXPECT_EQ(betti_of(ng).betti, betti_of(nf).betti);
}

TEST(ElementaryRefinement, Examples) {
  EXPECT_EQ(elementary_refinement(p1()), p1());
  Fan r = elementary_refinement(p1xp1());
  EXPECT_EQ(r.num_rays(), 5u);
  EXPECT_TRUE(is_refinement(r, p1xp1()).is_refinement);
  EXPECT_TRUE(validate(r).ok());
}
