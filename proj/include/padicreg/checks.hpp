#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace padicreg {

struct SuiteResult {
  std::string name;
  std::uint64_t checks_run = 0;
  std::uint64_t failures = 0;
  std::string counterexample;  // first failure, exact rationals; empty when clean

  bool passed() const { return failures == 0; }
};

// Ultrametric inequality |x+y|_p <= max(|x|_p, |y|_p) for p in {2, 3, 5},
// plus the equality clause when the magnitudes differ.
SuiteResult check_ultrametric(std::uint64_t trials, std::uint64_t seed);

// |a|_2 + |a-1|_2 >= 1 with equality exactly on a in {0, 1}. Always
// includes the boundary values 0, 1, 1/2, 2, -1, 1/3 beside the random
// draws.
SuiteResult check_binary_forcing(std::uint64_t trials, std::uint64_t seed);

// Rounding a 2-adically integral beta coordinatewise to its first digit
// never increases the instance loss. Trials are spread over 20 random
// graphs.
SuiteResult check_rounding_monotonicity(std::uint64_t trials, std::uint64_t seed);

// Max cut by brute force equals the cut size recovered from the optimal
// binary regression loss, one random graph per trial.
SuiteResult check_roundtrip(std::uint64_t trials, std::uint64_t seed);

std::vector<SuiteResult> run_all_checks(std::uint64_t trials, std::uint64_t seed);

}  // namespace padicreg
