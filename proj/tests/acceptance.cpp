// Runs every acceptance criterion and prints one PASS/FAIL line each.

#include <cstdlib>
#include <iostream>
#include <string>

#include "toricmorgan/verify.hpp"

int main(int argc, char** argv) {
  toricmorgan::verify::Options options;
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--seed") options.seed = std::strtoull(argv[i + 1], nullptr, 10);
  try {
    auto report = toricmorgan::verify::run_verify(options);
    toricmorgan::verify::print_report(report, std::cout);
    return report.ok() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "acceptance: " << e.what() << "\n";
    return 1;
  }
}
