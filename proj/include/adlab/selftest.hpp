#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace adlab {

struct SelfTestCheck {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity
  double tolerance = 0.0;  // bound it was held to
  std::string detail;
};

// Fast invariant suite over small random instances, deterministic in seed.
std::vector<SelfTestCheck> run_selftest(std::uint64_t seed = 20240601);

}  // namespace adlab
