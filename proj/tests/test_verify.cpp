#include <gtest/gtest.h>

#include <sstream>

#include "toricmorgan/verify.hpp"

using namespace toricmorgan;

TEST(Verify, LibraryShapes) {
  auto fans = verify::fan_library();
  EXPECT_EQ(fans.size(), 13u);
  for (const auto& f : fans) EXPECT_TRUE(validate(f.fan).ok()) << f.name;
  EXPECT_EQ(verify::roots_of_unity(3).layers.size(), 3u);
  EXPECT_FALSE(verify::test_arrangements().empty());
}

TEST(Verify, SeedDoesNotChangeVerdicts) {
  verify::Options a, b;
  a.seed = 1;
  b.seed = 987654321;
  auto ra = verify::run_verify(a), rb = verify::run_verify(b);
  ASSERT_EQ(ra.results.size(), 13u);
  ASSERT_EQ(rb.results.size(), 13u);
  for (size_t k = 0; k < 13; ++k) {
    EXPECT_EQ(ra.results[k].pass, rb.results[k].pass) << "criterion " << k + 1;
    EXPECT_TRUE(ra.results[k].pass) << "criterion " << k + 1;
  }
}

TEST(Verify, ReportIsDeterministic) {
  auto first = verify::run_criterion(6), second = verify::run_criterion(6);
  std::ostringstream x, y;
  verify::print_report(verify::Report{{first}}, x);
  verify::print_report(verify::Report{{second}}, y);
  EXPECT_EQ(x.str(), y.str());
  std::ostringstream machine;
  verify::print_report(verify::Report{{first}}, machine, true);
  EXPECT_EQ(machine.str(), "PASS 6 " + first.title + "\nVERIFY PASS 1/1\n");
}

TEST(Verify, MissingFamilyTwoBreaksPointInLine) {
  verify::Options broken;
  broken.families.family2 = false;
  auto r = verify::run_criterion(6, broken);
  EXPECT_FALSE(r.pass);
  EXPECT_THROW(verify::run_criterion(14), InputError);
}
