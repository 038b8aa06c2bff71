#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"
#include "toricmorgan/io.hpp"

using namespace tmtest;

namespace {

std::string data(const std::string& name) { return std::string(TORICMORGAN_TEST_DATA) + "/" + name; }

std::string error_of(const std::string& text, bool arrangement_format) {
  std::istringstream in(text);
  try {
    if (arrangement_format) parse_arrangement(in, "mem");
    else parse_fan(in, "mem");
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(ParseFan, ProductOfLines) {
  Fan f = parse_fan_file(data("p1xp1.fan"));
  EXPECT_EQ(f, p1xp1());
  EXPECT_EQ(parse_fan_file(data("p2.fan")), projective_space_fan(2));
}

TEST(ParseFan, RoundTrip) {
  for (const Fan& f : {hirzebruch_fan(2), projective_space_fan(3), stellar_subdivide(p1xp1(), iv({1, 1}))}) {
    std::istringstream in(format_fan(f));
    EXPECT_EQ(parse_fan(in), f);
  }
  std::istringstream zero("dim 0\n");
  EXPECT_EQ(parse_fan(zero), Fan::zero());
}

TEST(ParseFan, Errors) {
  EXPECT_THROW(parse_fan_file(data("singular.fan")), InputError);
  Fan lenient = parse_fan_file(data("singular.fan"), false);
  EXPECT_FALSE(validate(lenient).smooth);
  EXPECT_THROW(parse_fan_file(data("missing.fan")), InputError);
  try {
    parse_fan_file(data("bad_token.fan"));
    FAIL() << "accepted a malformed ray";
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("bad_token.fan:4:"), std::string::npos) << e.what();
  }
  EXPECT_NE(error_of("dim 2\nrays\n1 0 0\n", false).find("mem:3: expected 2 integers"), std::string::npos);
  EXPECT_NE(error_of("dim 1\nrays\n1\n-1\ncones\n0\n7\n", false).find("mem:7: ray index 7 out of range"),
            std::string::npos);
  EXPECT_NE(error_of("", false).find("mem:1:"), std::string::npos);
  EXPECT_NE(error_of("dim 1\nrays\n1\n-1\n", false).find("missing 'cones'"), std::string::npos);
}

TEST(ParseFan, CommentsAndWhitespace) {
  std::istringstream in("  dim 1 # line\n\nrays\n 1\n\t-1   # negative\ncones\n0\n1\n");
  EXPECT_EQ(parse_fan(in), p1());
}

TEST(ParseArrangement, A1) {
  Arrangement a = parse_arrangement_file(data("a1.arr"));
  EXPECT_EQ(a.dim, 1u);
  ASSERT_EQ(a.layers.size(), 1u);
  EXPECT_EQ(a.layers[0], layer({{1}}, {{0, 1}}, 1));
}

TEST(ParseArrangement, MultiRowLayersAndRoundTrip) {
  Arrangement p = parse_arrangement_file(data("point.arr"));
  ASSERT_EQ(p.layers.size(), 1u);
  EXPECT_EQ(p.layers[0].rank(), 2u);
  Arrangement two = parse_arrangement_file(data("two_divisors.arr"));
  EXPECT_EQ(two.layers.size(), 2u);
  std::istringstream in(format_arrangement(two));
  Arrangement again = parse_arrangement(in);
  EXPECT_EQ(again.layers, two.layers);
  std::istringstream reduced("dim 1\nlayer\nchar -1\nphase 6/4\n");
  EXPECT_EQ(parse_arrangement(reduced).layers[0], layer({{1}}, {{1, 2}}, 1));
}

TEST(ParseArrangement, NonSplitCharacterPointsToDecomposition) {
  try {
    parse_arrangement_file(data("non_split.arr"));
    FAIL() << "accepted a non-split layer";
  } catch (const InputError& e) {
    std::string what = e.what();
    EXPECT_NE(what.find("non_split.arr:2:"), std::string::npos) << what;
    EXPECT_NE(what.find("decompose"), std::string::npos) << what;
  }
}

TEST(ParseArrangement, Errors) {
  EXPECT_NE(error_of("dim 2\nchar 1 0\n", true).find("mem:2: 'char' outside a layer block"), std::string::npos);
  EXPECT_NE(error_of("dim 2\nlayer\nchar 1 0\nphase 1/0\n", true).find("mem:4: zero denominator"),
            std::string::npos);
  EXPECT_NE(error_of("dim 2\nlayer\nchar 1 0\n", true).find("mem:2:"), std::string::npos);
  EXPECT_NE(error_of("dim 2\nlayer\nchar 1 0\nphase 0\nbogus\n", true).find("mem:5: expected 'layer'"),
            std::string::npos);
  EXPECT_NE(error_of("dim 2\nlayer\nchar 1 0 0\nphase 0\n", true).find("mem:3:"), std::string::npos);
}
