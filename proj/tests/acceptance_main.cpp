#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "thermogas/acceptance.hpp"
#include "thermogas/runner.hpp"

// Runs the acceptance criteria and prints one PASS/FAIL line per criterion.
// Optional arguments select criteria by number.
int main(int argc, char** argv) {
  thermogas::AcceptanceOptions options;
  options.params = thermogas::default_acceptance_params();
  options.threads = thermogas::threads_from_env();
  std::vector<int> ids;
  for (int i = 1; i < argc; ++i) ids.push_back(std::atoi(argv[i]));

  const auto results = thermogas::run_acceptance(options, ids);
  int failed = 0;
  for (const auto& r : results) {
    std::cout << thermogas::format_result(r) << '\n';
    if (!r.pass) ++failed;
  }
  std::cout << (results.size() - failed) << '/' << results.size() << " criteria passed\n";
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
