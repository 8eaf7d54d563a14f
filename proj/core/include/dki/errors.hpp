#pragma once

#include <stdexcept>

namespace dki {

/// Thrown when a request exceeds a documented exhaustive-scan limit
/// (e.g. full-S_n oracle sweeps past length 9).
struct LimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace dki
