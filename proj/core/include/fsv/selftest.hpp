#pragma once

#include <string>
#include <vector>

namespace fsv {

struct SelfCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Fast invariant checks over the library (determinism, fold partitions,
/// sampling, closed forms, FSV scaling). Runs in well under a second.
std::vector<SelfCheck> run_selftest();

}  // namespace fsv
