#include <iostream>

#include "spinloc/acceptance.hpp"

int main() {
  const auto results = spinloc::run_acceptance(true, &std::cout);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  std::cout << (failures == 0 ? "all criteria passed"
                              : std::to_string(failures) + " criteria FAILED")
            << "\n";
  return failures == 0 ? 0 : 4;
}
