#include <cstdlib>
#include <iostream>

#include "epwforge/verify.hpp"

int main(int argc, char** argv) {
  epwforge::VerifyOptions options;
  if (argc > 1) options.seed = std::strtoull(argv[1], nullptr, 10);
  bool ok = true;
  for (int id = 1; id <= epwforge::kCriterionCount; ++id) {
    const auto r = epwforge::run_criterion(id, options.seed);
    std::cout << epwforge::format_result_line(r) << std::endl;
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}
