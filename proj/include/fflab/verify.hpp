#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fflab {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

/// Cross-module verification suite: dense-oracle equivalence of every Gaussian
/// formula plus the structural invariants, at small mode counts. Deterministic
/// for a fixed seed.
std::vector<CheckResult> run_verification_suite(std::uint64_t seed = 1);

} // namespace fflab
