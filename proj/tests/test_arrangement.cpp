#include <gtest/gtest.h>

#include "support.hpp"
#include "toricmorgan/arrangement.hpp"

using namespace tmtest;

namespace {

Layer point(long a1, long b1, long a2, long b2) {
  return Layer::from_canonical(Sublattice::full(2), TorsionPhase({ratio(a1, b1), ratio(a2, b2)}));
}

Layer divisor(std::initializer_list<long> chi, long p, long q, size_t dim) { return layer({chi}, {{p, q}}, dim); }

}  // namespace

TEST(ValidateLayer, Examples) {
  EXPECT_TRUE(validate_layer(mat({{1, 1}}, 2), {Rational(0)}));
  auto defect = layer_defect(mat({{2, 0}}, 2), {Rational(0)});
  ASSERT_TRUE(defect);
  EXPECT_NE(defect->find("decompose_system"), std::string::npos);
  EXPECT_TRUE(validate_layer(IntMatrix::identity(2), {ratio(1, 2), ratio(1, 3)}));
  EXPECT_FALSE(validate_layer(mat({{1, 0}, {2, 0}}, 2), {Rational(0), Rational(0)}));
  EXPECT_FALSE(validate_layer(mat({{1, 0}}, 2), {}));
  EXPECT_THROW(layer({{2, 0}}, {{1, 2}}, 2), InputError);
}

TEST(Layer, CanonicalPhase) {
  // t1 t2 = -1 and t2 = 1 is the point (-1, 1)
  Layer l = layer({{1, 1}, {0, 1}}, {{1, 2}, {0, 1}}, 2);
  EXPECT_EQ(l.gamma(), Sublattice::full(2));
  EXPECT_EQ(l, point(1, 2, 0, 1));
  EXPECT_EQ(l.phase_of(iv({1, 1})), ratio(1, 2));
  EXPECT_EQ(l.phase_of(iv({3, -1})), ratio(1, 2));
  EXPECT_EQ(l.dimension(), 0u);
  EXPECT_EQ(layer({{1, 0}}, {{3, 2}}, 2), layer({{-1, 0}}, {{1, 2}}, 2));
}

TEST(Decompose, Examples) {
  auto r = decompose_system(mat({{1, 1}, {1, -1}}, 2), {Rational(0), Rational(0)});
  ASSERT_TRUE(r.consistent);
  ASSERT_EQ(r.layers.size(), 2u);
  EXPECT_EQ(r.layers[0], point(0, 1, 0, 1));
  EXPECT_EQ(r.layers[1], point(1, 2, 1, 2));

  auto one = decompose_system(mat({{1, 0}}, 2), {Rational(0)});
  ASSERT_EQ(one.layers.size(), 1u);
  EXPECT_EQ(one.layers[0], divisor({1, 0}, 0, 1, 2));

  auto quarter = decompose_system(mat({{2, 0}}, 2), {ratio(1, 2)});
  ASSERT_EQ(quarter.layers.size(), 2u);
  EXPECT_EQ(quarter.layers[0], divisor({1, 0}, 1, 4, 2));
  EXPECT_EQ(quarter.layers[1], divisor({1, 0}, 3, 4, 2));

  auto none = decompose_system(mat({{1, 0}, {1, 0}}, 2), {Rational(0), ratio(1, 2)});
  EXPECT_FALSE(none.consistent);
  EXPECT_TRUE(none.layers.empty());
}

TEST(Decompose, CountEqualsTorsionOrder) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 150; ++trial) {
    std::uniform_int_distribution<size_t> rows(1, 3);
    IntMatrix chars = random_matrix(rng, rows(rng), 3, 3);
    if (rank(chars) != chars.rows()) continue;
    std::vector<Rational> phases;
    for (size_t i = 0; i < chars.rows(); ++i) phases.push_back(ratio(static_cast<long>(rng() % 6), 6));
    auto r = decompose_system(chars, phases);
    Integer order = 1;
    for (const auto& d : elementary_divisors(chars)) order *= d;
    ASSERT_TRUE(r.consistent);
    EXPECT_EQ(Integer(r.layers.size()), order);
    for (const auto& l : r.layers) {
      EXPECT_EQ(l.gamma(), saturate(Sublattice::span(chars)));
      // every layer satisfies every equation of the system
      for (size_t i = 0; i < chars.rows(); ++i) EXPECT_EQ(l.phase_of(chars.row(i)), reduce_mod_one(phases[i]));
    }
  }
}

TEST(Intersect, Examples) {
  auto a = intersect_layers(divisor({1, 0}, 0, 1, 2), divisor({0, 1}, 0, 1, 2));
  ASSERT_EQ(a.size(), 1u);
  EXPECT_EQ(a[0], point(0, 1, 0, 1));

  auto b = intersect_layers(divisor({1, 1}, 0, 1, 2), divisor({1, -1}, 0, 1, 2));
  ASSERT_EQ(b.size(), 2u);
  EXPECT_EQ(b[1], point(1, 2, 1, 2));

  EXPECT_TRUE(intersect_layers(divisor({1, 0}, 0, 1, 2), divisor({1, 0}, 1, 2, 2)).empty());
}

TEST(Intersect, LayersAreConnected) {
  for (const Layer& l : {divisor({1, 1}, 1, 3, 2), point(1, 2, 1, 5), layer({{1, 2, 3}}, {{1, 4}}, 3)}) {
    auto self = intersect_layers(l, l);
    ASSERT_EQ(self.size(), 1u);
    EXPECT_EQ(self[0], l);
  }
}

TEST(Saturation, Examples) {
  auto two = saturate_arrangement(arrangement(2, {divisor({1, 0}, 0, 1, 2), divisor({0, 1}, 0, 1, 2)}));
  EXPECT_EQ(two.size(), 3u);
  EXPECT_EQ(two.element(0), point(0, 1, 0, 1));

  auto cross = saturate_arrangement(arrangement(2, {divisor({1, 1}, 0, 1, 2), divisor({1, -1}, 0, 1, 2)}));
  EXPECT_EQ(cross.size(), 4u);

  auto single = saturate_arrangement(arrangement(2, {divisor({1, 2}, 1, 3, 2)}));
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single.element(0), divisor({1, 2}, 1, 3, 2));
}

TEST(Saturation, Idempotent) {
  auto a = arrangement(2, {divisor({1, 0}, 0, 1, 2), divisor({0, 1}, 0, 1, 2), divisor({1, 1}, 0, 1, 2),
                           divisor({1, -1}, 1, 2, 2)});
  auto p = saturate_arrangement(a);
  auto again = saturate_arrangement(arrangement(2, p.elements()));
  EXPECT_EQ(again.elements(), p.elements());
  // listed by decreasing rank, so containment only points forward
  for (size_t i = 0; i < p.size(); ++i)
    for (size_t j = 0; j < i; ++j) EXPECT_FALSE(p.strictly_below(i, j));
}

TEST(Inclusion, Examples) {
  EXPECT_TRUE(inclusion_test(point(0, 1, 0, 1), divisor({1, 0}, 0, 1, 2)));
  EXPECT_FALSE(inclusion_test(point(1, 2, 1, 2), divisor({1, 0}, 0, 1, 2)));
  Layer l = divisor({1, 1}, 0, 1, 2);
  EXPECT_TRUE(inclusion_test(l, l));
  EXPECT_FALSE(inclusion_test(divisor({1, 0}, 0, 1, 2), point(0, 1, 0, 1)));
}

TEST(Inclusion, PartialOrder) {
  auto p = saturate_arrangement(arrangement(
      3, {layer({{1, 0, 0}}, {{0, 1}}, 3), layer({{0, 1, 0}}, {{0, 1}}, 3), layer({{1, 1, 1}}, {{1, 2}}, 3),
          layer({{0, 0, 1}}, {{1, 2}}, 3), layer({{1, -1, 0}}, {{0, 1}}, 3)}));
  ASSERT_GT(p.size(), 8u);
  const auto& e = p.elements();
  for (size_t a = 0; a < e.size(); ++a) {
    EXPECT_TRUE(inclusion_test(e[a], e[a]));
    for (size_t b = 0; b < e.size(); ++b) {
      if (a != b && inclusion_test(e[a], e[b])) EXPECT_FALSE(inclusion_test(e[b], e[a]));
      for (size_t c = 0; c < e.size(); ++c)
        if (inclusion_test(e[a], e[b]) && inclusion_test(e[b], e[c])) EXPECT_TRUE(inclusion_test(e[a], e[c]));
    }
  }
}

TEST(Poset, Reordering) {
  auto p = saturate_arrangement(arrangement(2, {divisor({1, 0}, 0, 1, 2), divisor({0, 1}, 0, 1, 2)}));
  auto alt = p.alternative_linear_extension();
  ASSERT_TRUE(alt);
  EXPECT_NE(alt->elements(), p.elements());
  for (size_t i = 0; i < alt->size(); ++i)
    for (size_t j = 0; j < i; ++j) EXPECT_FALSE(alt->strictly_below(i, j));
  EXPECT_THROW(p.reordered({1, 2, 0}), InputError);
  EXPECT_THROW(p.reordered({0, 0, 1}), InputError);
}

TEST(CombinatorialData, Examples) {
  auto a1 = data_of(arrangement(1, {layer({{1}}, {{0, 1}}, 1)}));
  ASSERT_EQ(a1.size(), 1u);
  EXPECT_EQ(a1.gammas[0], Sublattice::full(1));

  auto two = data_of(arrangement(2, {divisor({1, 0}, 0, 1, 2), divisor({0, 1}, 0, 1, 2)}));
  ASSERT_EQ(two.size(), 3u);
  EXPECT_EQ(two.gammas[0], Sublattice::full(2));
  size_t maximal = 0;
  for (size_t i = 0; i < 3; ++i) {
    bool has_above = false;
    for (size_t j = 0; j < 3; ++j) has_above = has_above || two.strictly_below(i, j);
    if (!has_above) ++maximal;
  }
  EXPECT_EQ(maximal, 2u);
  std::vector<Sublattice> divisors{two.gammas[1], two.gammas[2]};
  std::sort(divisors.begin(), divisors.end());
  std::vector<Sublattice> expected{Sublattice::span(2, {iv({1, 0})}), Sublattice::span(2, {iv({0, 1})})};
  std::sort(expected.begin(), expected.end());
  EXPECT_EQ(divisors, expected);

  EXPECT_EQ(data_of(arrangement(2, {})).size(), 0u);
}
