#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace xpr::suite {

struct CriterionResult {
  int index = 0;
  std::string name;
  bool pass = false;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteOptions {
  std::uint64_t seed = 20240915;
};

/// Runs the whole acceptance battery; one result per criterion. Progress
/// lines (one per criterion) go to `progress` when non-null.
std::vector<CriterionResult> run_acceptance_suite(const SuiteOptions& opts,
                                                  std::ostream* progress = nullptr);

bool all_pass(const std::vector<CriterionResult>& results);

}  // namespace xpr::suite
