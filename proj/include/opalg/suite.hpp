#pragma once

// The acceptance criteria as executable checks. Shared by the `suite`
// subcommand and the acceptance test binary so both report the same thing.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace opalg::suite {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Criteria 1-10, each seeded from `seed`. Unexpected exceptions count as a
/// failure of the criterion that raised them.
CriterionResult run_criterion(int id, std::uint64_t seed);
constexpr int kCriterionCount = 10;

/// Runs 1-10 in order, calls `on_result` after each, then appends criterion
/// 11 (everything passed within the wall-clock budget).
std::vector<CriterionResult> run_all(std::uint64_t seed,
                                     const std::function<void(const CriterionResult&)>& on_result = {});

/// "[PASS] 3 invertible-T witness (0.42 s): detail"
std::string format(const CriterionResult& r);

}  // namespace opalg::suite
