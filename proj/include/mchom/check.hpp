#pragma once

// Always-on internal invariant checks (independent of NDEBUG).  Violations
// indicate a bug in this library, not bad user input, hence logic_error.

#include <stdexcept>
#include <string>

namespace mchom {

inline void check(bool cond, const std::string& msg) {
  if (!cond) throw std::logic_error("internal check failed: " + msg);
}

}  // namespace mchom
