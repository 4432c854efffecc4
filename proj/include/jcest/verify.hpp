#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace jcest {

struct Check {
  std::string name;
  bool passed = false;
  double value = 0.0;      // residual, z-score or violation count
  double threshold = 0.0;  // pass if value <= threshold
  std::string detail;
};

struct VerifyReport {
  std::uint64_t seed = 0;
  std::vector<Check> checks;

  bool ok() const;
  nlohmann::json to_json() const;
};

/// Oracle and invariant suite on a fixed reference grid. `cmax_scale`
/// multiplies every ML normalization before the positivity audits; anything
/// above 1 is a deliberately infeasible POVM and must make the report fail.
/// Same seed, same report, byte for byte.
VerifyReport verify_all(std::uint64_t seed, double cmax_scale = 1.0);

}  // namespace jcest
