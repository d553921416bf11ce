#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "jckerr/rng.hpp"

namespace jckerr::cli {

struct VerifyOptions {
  std::uint64_t seed = SplitMix64::kDefaultSeed;
  /// Random points per group; must be >= 1.
  int samples = 100;
  /// Negative control: build printed blocks wherever corrected ones are expected.
  bool inject_printed = false;
};

struct GroupResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Runs every property group (model, eigen, observables, hellmann_feynman,
/// curve, crossings). Throws UsageError when samples < 1.
std::vector<GroupResult> run_verification(const VerifyOptions& options);

}  // namespace jckerr::cli
