#ifndef ERP_SELFTEST_HPP
#define ERP_SELFTEST_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace erp {

struct CriterionResult {
  std::string id;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;  // deterministic for a fixed seed (no timings)
};

// Runs the full acceptance suite with deterministic sub-seeds derived from
// `seed`. Criteria never throw; internal errors turn into failed results.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = 0);

// One line per criterion ("PASS"/"FAIL", id, name, time, detail); returns
// the number of failures.
int report_acceptance(std::ostream& out, const std::vector<CriterionResult>& results);

}  // namespace erp

#endif
