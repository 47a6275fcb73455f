#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace steklov {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool pass = false;
  std::string detail; // worst-case figures behind the verdict
  double seconds = 0.0;
};

/// Runs the numbered acceptance checks (1..10). An empty `ids` runs all of
/// them. `seed` drives the random inputs of checks 8 and 10.
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids = {}, std::uint64_t seed = 20240607);

// "criterion N: PASS|FAIL  title  detail  (t s)"
std::string format_result(const CriterionResult& r);

} // namespace steklov
