#pragma once

#include <string>

namespace lpt {

// Outcome of one numerical certificate. worst is the quantity compared
// against the check's threshold, in whatever units the check uses.
struct CheckReport {
  std::string name;
  bool pass = true;
  double worst = 0.0;
  std::string detail;
};

}  // namespace lpt
