// SPDX-License-Identifier: Apache-2.0
// Prints one PASS/FAIL line per acceptance criterion; exit 0 iff all pass.
#include <iostream>

#include "casimir/lattice.hpp"
#include "report.hpp"

int main(int argc, char** argv) {
  casimir::tools::SuiteOptions opt;
  if (argc > 1) opt.data_dir = argv[1];
  std::cout << "# simd path: " << casimir::to_string(casimir::active_simd_path())
            << ", threads: " << casimir::tools::thread_cap() << std::endl;
  int failed = 0;
  for (int id = 1; id <= 9; ++id) {
    const auto c = casimir::tools::run_criterion(id, opt);
    failed += c.pass ? 0 : 1;
    std::cout << casimir::tools::criterion_line(c) << std::endl;
  }
  std::cout << (failed == 0 ? "all 9 criteria passed" : std::to_string(failed) + " of 9 criteria failed") << std::endl;
  return failed == 0 ? 0 : 1;
}
