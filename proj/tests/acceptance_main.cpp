// Runs the acceptance suite and prints one PASS/FAIL line per criterion.
// Exit code is the pass/fail verdict for the whole suite.
#include <cstdint>
#include <cstdlib>
#include <iostream>

#include "erp/selftest.hpp"

int main(int argc, char** argv) {
  std::uint64_t seed = 0;
  if (argc > 1) seed = std::strtoull(argv[1], nullptr, 10);
  const auto results = erp::run_acceptance(seed);
  const int failures = erp::report_acceptance(std::cout, results);
  if (failures == 0) {
    std::cout << "all " << results.size() << " criteria passed\n";
    return 0;
  }
  std::cout << failures << " of " << results.size() << " criteria failed\n";
  return 1;
}
