#include <gtest/gtest.h>

#include "support.hpp"
#include "toricmorgan/oracles.hpp"
#include "toricmorgan/toric_dga.hpp"

using namespace tmtest;

namespace {

Element x_of(const MonomialAlgebra& a, size_t i) { return a.gen(i); }

std::vector<size_t> even_part(const std::vector<size_t>& dims) {
  std::vector<size_t> out;
  for (size_t d = 0; d < dims.size(); d += 2) out.push_back(dims[d]);
  return out;
}

std::vector<size_t> binomials(size_t n) {
  std::vector<size_t> out(n + 1, 1);
  for (size_t k = 1; k <= n; ++k) out[k] = out[k - 1] * (n - k + 1) / k;
  return out;
}

IntMatrix random_unimodular(std::mt19937_64& rng, size_t n) {
  IntMatrix u = IntMatrix::identity(n);
  std::uniform_int_distribution<long> k(-2, 2);
  for (int step = 0; step < 6; ++step) {
    size_t a = rng() % n, b = rng() % n;
    if (a != b) u.add_row_multiple(a, b, k(rng));
    if (rng() % 3 == 0) u.negate_row(a);
  }
  return u;
}

}  // namespace

TEST(ToricB, Examples) {
  EXPECT_EQ(build_B(p1()).dims(), (std::vector<size_t>{1, 0, 1}));
  EXPECT_EQ(build_B(projective_space_fan(2)).dims(), (std::vector<size_t>{1, 0, 1, 0, 1}));
  EXPECT_EQ(build_B(p1xp1()).dims(), (std::vector<size_t>{1, 0, 2, 0, 1}));
}

TEST(ToricB, MatchesHVectorAndIsPalindromic) {
  for (const Fan& f : {hirzebruch_fan(2), projective_space_fan(3), stellar_subdivide(p1xp1(), iv({1, 1})),
                       stellar_subdivide(projective_space_fan(3), iv({1, 1, 1}))}) {
    auto dims = build_B(f).dims();
    EXPECT_EQ(dims, oracles::h_vector_betti(f));
    auto even = even_part(dims);
    EXPECT_EQ(even, std::vector<size_t>(even.rbegin(), even.rend()));
  }
}

TEST(ToricB, IndependentOfCharacterBasis) {
  std::mt19937_64 rng(51);
  Fan f = stellar_subdivide(hirzebruch_fan(1), iv({1, 1}));
  auto reference = build_B(f).dims();
  for (int k = 0; k < 5; ++k) EXPECT_EQ(build_B(f, -1, random_unimodular(rng, 2)).dims(), reference);
}

TEST(ColonAlgebra, Examples) {
  Fan f = p1();
  auto a = build_A(f);
  auto zero_colon = build_A_colon(f, {});
  for (int d = 0; d <= 6; ++d) EXPECT_EQ(zero_colon->degree_basis(d), a->degree_basis(d));

  size_t plus = ray(f, {1});
  auto colon = build_A_colon(f, {plus});
  for (int d = 2; d <= 6; d += 2) {
    ASSERT_EQ(colon->degree_basis(d).size(), 1u);
    EXPECT_EQ(colon->degree_basis(d)[0][plus], d / 2);
  }
  EXPECT_EQ(colon_rank(f, {plus}), 1u);
  EXPECT_EQ(colon_rank(p1xp1(), {ray(p1xp1(), {1, 0})}), 2u);
  EXPECT_EQ(colon_rank(p1xp1(), {}), 4u);
  EXPECT_THROW(build_A_colon(p1xp1(), {ray(p1xp1(), {1, 0}), ray(p1xp1(), {-1, 0})}), InputError);
}

TEST(ColonAlgebra, RankIsStarSize) {
  for (const Fan& f : {hirzebruch_fan(2), projective_space_fan(3)})
    for (const auto& cone : f.all_cones()) {
      size_t star = 0;
      for (const auto& m : f.max_cones())
        if (std::includes(m.begin(), m.end(), cone.begin(), cone.end())) ++star;
      EXPECT_EQ(colon_rank(f, cone), star);
    }
}

TEST(ToricC, LineExample) {
  ToricC c = build_C(p1());
  EXPECT_EQ(c.quotient->dims(), (std::vector<size_t>{1, 2, 1, 0, 0}));
  EXPECT_EQ(cohomology(*c.quotient, *c.dga.d).dims, (std::vector<size_t>{1, 1, 0, 0}));
}

TEST(ToricC, TotalDimensionIsSumOfColonRanks) {
  for (const Fan& f : {p1xp1(), hirzebruch_fan(1), projective_space_fan(3)}) {
    ToricC c = build_C(f, 3 * static_cast<int>(f.dim()) + 1);
    size_t total = 0;
    for (size_t d : c.quotient->dims()) total += d;
    size_t expected = 0;
    for (const auto& cone : f.all_cones()) expected += colon_rank(f, cone);
    EXPECT_EQ(total, expected);
  }
}

TEST(ToricC, CohomologyIsExteriorAlgebra) {
  for (const Fan& f : {p1xp1(), hirzebruch_fan(2), projective_space_fan(3)}) {
    const size_t n = f.dim();
    ToricC c = build_C(f);
    auto h = cohomology(*c.quotient, *c.dga.d);
    auto expected = binomials(n);
    expected.resize(2 * n + 2, 0);
    EXPECT_EQ(h.dims, expected);
    EXPECT_TRUE(h.d_squared_zero);
    for (const auto& psi : c.psi) EXPECT_TRUE(c.quotient->is_zero(c.dga.d->apply(psi)));
    EXPECT_TRUE(check_derivation(*c.quotient, *c.dga.d));
  }
}

TEST(ToricC, IndependentOfCharacterBasis) {
  std::mt19937_64 rng(52);
  Fan f = hirzebruch_fan(1);
  auto reference = build_C(f).quotient->dims();
  for (int k = 0; k < 3; ++k) {
    ToricC c = build_C(f, -1, random_unimodular(rng, 2));
    EXPECT_EQ(c.quotient->dims(), reference);
    EXPECT_EQ(cohomology(*c.quotient, *c.dga.d).dims, (std::vector<size_t>{1, 2, 1, 0, 0, 0}));
  }
}

TEST(ToricD, Acyclic) {
  for (const Fan& f : {p1(), p1xp1(), hirzebruch_fan(2)}) {
    ToricDGA dga = build_D(f);
    auto q = d_quotient(dga, 2 * static_cast<int>(f.dim()) + 2);
    auto h = cohomology(q, *dga.d);
    std::vector<size_t> expected(h.dims.size(), 0);
    expected[0] = 1;
    EXPECT_EQ(h.dims, expected);
  }
}

TEST(HomotopyS, Examples) {
  Fan f = p1xp1();
  ToricDGA dga = build_D(f);
  const auto& a = *dga.algebra;
  EXPECT_EQ(homotopy_S(dga, a.gen(dga.x(0))), a.gen(dga.tau(0)));
  EXPECT_TRUE(homotopy_S(dga, a.gen(dga.tau(0))).empty());
  ASSERT_TRUE(f.is_cone({0, 1}));
  Element m = a.multiply(a.gen(dga.x(0)), a.gen(dga.tau(1)));
  Element sd = homotopy_S(dga, dga.d->apply(m));
  Element ds = dga.d->apply(homotopy_S(dga, m));
  EXPECT_EQ(sd + ds, m);
  EXPECT_THROW(homotopy_S(dga, a.one()), InputError);
}

TEST(HomotopyS, ContractionOnRandomMonomials) {
  std::mt19937_64 rng(53);
  for (const Fan& f : {projective_space_fan(2), stellar_subdivide(p1xp1(), iv({1, 1})), projective_space_fan(3)}) {
    ToricDGA dga = build_D(f);
    int checked = 0;
    while (checked < 200) {
      int d = 1 + static_cast<int>(rng() % 7);
      const auto& basis = dga.algebra->degree_basis(d);
      if (basis.empty()) continue;
      Element m{{basis[rng() % basis.size()], 1}};
      EXPECT_EQ(homotopy_S(dga, dga.d->apply(m)) + dga.d->apply(homotopy_S(dga, m)), m);
      ++checked;
    }
  }
}

TEST(GammaMap, StellarExample) {
  Fan f = p1xp1();
  Fan g = stellar_subdivide(f, iv({1, 1}));
  auto ag = build_A(g);
  auto images = gamma_images(f, g, *ag);
  EXPECT_EQ(images[ray(f, {1, 0})], x_of(*ag, ray(g, {1, 0})) + x_of(*ag, ray(g, {1, 1})));
  EXPECT_EQ(images[ray(f, {-1, 0})], x_of(*ag, ray(g, {-1, 0})));

  auto af = build_A(f);
  DegreewiseQuotient a_f(af, {}, 4), a_g(ag, {}, 4);
  EXPECT_NO_THROW(gamma_map(f, a_f, g, a_g).verify());
  EXPECT_THROW(gamma_map(g, a_g, f, a_f), InputError);
}

TEST(ZetaMap, CommutesWithDifferential) {
  Fan f = hirzebruch_fan(1);
  Fan g = stellar_subdivide(f, iv({1, 1}));
  ToricDGA df = build_D(f), dg = build_D(g);
  auto qf = d_quotient(df, 5), qg = d_quotient(dg, 5);
  auto z = zeta_map(df, qf, dg, qg);
  EXPECT_FALSE(z.defect(df.d.get(), dg.d.get()));
}

TEST(ChiMap, QuasiIsomorphism) {
  Fan f = p1xp1();
  Fan g = stellar_subdivide(f, iv({1, 1}));
  ToricC cf = build_C(f), cg = build_C(g);
  auto chi = chi_map(cf, cg);
  EXPECT_FALSE(chi.defect(cf.dga.d.get(), cg.dga.d.get()));
  auto hf = cohomology(*cf.quotient, *cf.dga.d).dims;
  auto hg = cohomology(*cg.quotient, *cg.dga.d).dims;
  EXPECT_EQ(hf, hg);
  EXPECT_EQ(hf, (std::vector<size_t>{1, 2, 1, 0, 0, 0}));
  // xi goes to xi
  for (const auto& psi : cf.psi) EXPECT_TRUE(cg.quotient->is_zero(chi.apply(cf.dga.d->apply(psi))));
}

TEST(MuEval, Examples) {
  Fan f = p1();
  auto a = build_A(f);
  Element x_plus = a->gen(ray(f, {1})), x_minus = a->gen(ray(f, {-1}));
  Element product;
  add_term(product, Monomial{1, 1}, 1);
  EXPECT_EQ(mu_eval(f, *a, product, rv({3})), 0);
  EXPECT_EQ(mu_eval(f, *a, x_plus - x_minus, rv({ratio(-5, 2)})), ratio(-5, 2));

  Fan g = p1xp1();
  auto ag = build_A(g);
  EXPECT_EQ(mu_eval(g, *ag, ag->gen(ray(g, {1, 0})), rv({2, 5})), 2);
}

TEST(MuEval, NonFacesVanishEverywhere) {
  std::mt19937_64 rng(54);
  for (const Fan& f : {projective_space_fan(2), hirzebruch_fan(2), projective_space_fan(3)}) {
    auto a = build_A(f);
    std::vector<Monomial> non_faces;
    for (int d = 4; d <= 2 * static_cast<int>(f.dim()) + 2; d += 2)
      for (const auto& m : a->minimal_inadmissible(d)) non_faces.push_back(m);
    ASSERT_FALSE(non_faces.empty());
    for (int k = 0; k < 1000; ++k) {
      RatVector v = random_point(rng, f.dim());
      for (const auto& m : non_faces) {
        Rational value = 1;
        RatVector s = eval_s_all(f, v);
        for (size_t c = 0; c < m.size(); ++c)
          for (unsigned e = 0; e < m[c]; ++e) value *= s[c];
        EXPECT_EQ(value, 0);
      }
    }
  }
}

TEST(MuEval, StandardMonomialsAreIndependentFunctions) {
  std::mt19937_64 rng(55);
  for (const Fan& f : {p1xp1(), hirzebruch_fan(1)}) {
    auto a = build_A(f);
    std::vector<Monomial> monomials;
    for (int d = 0; d <= 6; d += 2)
      for (const auto& m : a->degree_basis(d)) monomials.push_back(m);
    size_t achieved = 0;
    for (int attempt = 0; attempt < 3 && achieved < monomials.size(); ++attempt) {
      RatMatrix rows;
      for (size_t k = 0; k < 3 * monomials.size(); ++k) {
        RatVector v = random_point(rng, f.dim());
        RatVector row;
        for (const auto& m : monomials) row.push_back(mu_eval(f, *a, Element{{m, 1}}, v));
        rows.push_back(row);
      }
      achieved = rank(rows);
    }
    EXPECT_EQ(achieved, monomials.size());
  }
}

TEST(MuEval, CompatibleWithRefinement) {
  std::mt19937_64 rng(56);
  Fan f = projective_space_fan(2);
  Fan g = stellar_subdivide(f, iv({1, 1}));
  auto af = build_A(f), ag = build_A(g);
  auto images = gamma_images(f, g, *ag);
  Element e = af->multiply(af->gen(0), af->gen(1)) + scaled(af->power(af->gen(2), 2), 3);
  Element pushed;
  for (const auto& [m, c] : e) {
    Element term = ag->one();
    for (size_t i = 0; i < m.size(); ++i)
      for (unsigned k = 0; k < m[i]; ++k) term = ag->multiply(term, images[i]);
    add_to(pushed, term, c);
  }
  for (int k = 0; k < 100; ++k) {
    RatVector v = random_point(rng, 2);
    EXPECT_EQ(mu_eval(f, *af, e, v), mu_eval(g, *ag, pushed, v));
  }
}

TEST(RocEqual, Examples) {
  Fan f = p1xp1();
  Fan g = stellar_subdivide(f, iv({1, 1}));
  auto af = build_A(f), ag = build_A(g);
  size_t e1 = ray(f, {1, 0});
  Element x = af->gen(e1);
  EXPECT_TRUE(roc_equal(f, x, g, gamma_images(f, g, *ag)[e1]));
  EXPECT_FALSE(roc_equal(f, x, g, ag->gen(ray(g, {1, 0}))));
  EXPECT_TRUE(roc_equal(f, Element{}, g, Element{}));
}

TEST(ChiMinus, Examples) {
  Fan f = p1();
  auto a = build_A(f);
  EXPECT_EQ(chi_minus(f, *a, iv({1})), scaled(a->gen(ray(f, {-1})), -1));
  EXPECT_TRUE(chi_minus(f, *a, iv({0})).empty());

  Fan g = p1xp1();
  auto ag = build_A(g);
  Element m = chi_minus(g, *ag, iv({1, 0}));
  EXPECT_EQ(m, scaled(ag->gen(ray(g, {-1, 0})), -1));
  EXPECT_EQ(mu_eval(g, *ag, m, rv({-2, 7})), -2);
  EXPECT_THROW(chi_minus(g, *ag, iv({1, 1})), InputError);
}

TEST(ChiMinus, IsMinWithZero) {
  std::mt19937_64 rng(57);
  Fan f = resolve_smooth(hyperplane_refine(p1xp1(), {iv({1, 1}), iv({1, -2})}));
  auto a = build_A(f);
  for (const auto& chi : {iv({1, 1}), iv({-1, 2}), iv({0, 1})}) {
    Element m = chi_minus(f, *a, chi);
    for (int k = 0; k < 100; ++k) {
      RatVector v = random_point(rng, 2);
      Rational value = dot(chi, v);
      EXPECT_EQ(mu_eval(f, *a, m, v), value < 0 ? value : Rational(0));
    }
  }
}
