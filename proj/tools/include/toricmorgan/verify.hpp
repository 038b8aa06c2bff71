#pragma once

// The acceptance suite shared by `toricmorgan verify` and the ctest binary.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "toricmorgan/arrangement.hpp"
#include "toricmorgan/fan.hpp"
#include "toricmorgan/wonderful_morgan.hpp"

namespace toricmorgan::verify {

struct NamedFan {
  std::string name;
  Fan fan;
};

/// P1, P2, P1xP1, F0..F2, P1xP1xP1 and one stellar blow-up of each fan of
/// dimension at least two.
std::vector<NamedFan> fan_library();

struct TestArrangement {
  std::string name;
  Arrangement arrangement;
};

/// Points in C*, divisors and points in (C*)^2 used by criteria 6 to 13.
std::vector<TestArrangement> test_arrangements();

/// m torsion points of order m in C*.
Arrangement roots_of_unity(size_t m);

struct Options {
  std::uint64_t seed = 1;
  /// Theta families used by the pipeline runs; the mutation test overrides them itself.
  ThetaFamilies families;
  bool parallel = false;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::vector<std::string> details;
};

struct Report {
  std::vector<CriterionResult> results;

  size_t passed() const;
  bool ok() const { return passed() == results.size(); }
};

Report run_verify(const Options& options = {});

/// Runs a single criterion (1..13).
CriterionResult run_criterion(int id, const Options& options = {});

/// One PASS/FAIL line per criterion, details unless `machine`, then `VERIFY PASS k/k`.
void print_report(const Report& report, std::ostream& out, bool machine = false);

std::string join(const std::vector<size_t>& v, const char* sep = ",");

}  // namespace toricmorgan::verify
