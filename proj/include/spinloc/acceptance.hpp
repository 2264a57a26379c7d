// The verification battery behind `spinloc verify` and the acceptance test
// binary: every closed form, inequality and consistency property the library
// claims, checked at pinned tolerances with fixed seeds.
#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace spinloc {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0;
};

// Runs all criteria; when `progress` is given, prints each line as it lands.
std::vector<CriterionResult> run_acceptance(bool parallel = true,
                                            std::ostream* progress = nullptr);

// Prints one PASS/FAIL line per criterion; returns the number of failures.
int report_acceptance(const std::vector<CriterionResult>& results, std::ostream& out);

}  // namespace spinloc
