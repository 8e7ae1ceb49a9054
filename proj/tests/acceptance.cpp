// Runs every acceptance criterion and prints one PASS/FAIL line per criterion.

#include <cstdlib>
#include <iostream>
#include <string>

#include "opalg/suite.hpp"

int main(int argc, char** argv) {
  const std::uint64_t seed = argc > 1 ? std::stoull(argv[1]) : 1;
  bool all = true;
  opalg::suite::run_all(seed, [&](const opalg::suite::CriterionResult& r) {
    std::cout << opalg::suite::format(r) << std::endl;
    all = all && r.pass;
  });
  return all ? EXIT_SUCCESS : EXIT_FAILURE;
}
