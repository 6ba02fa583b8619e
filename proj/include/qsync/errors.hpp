#pragma once

#include <stdexcept>

namespace qsync {

/// Raised when a request exceeds a size bound (search space, joint register).
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qsync
