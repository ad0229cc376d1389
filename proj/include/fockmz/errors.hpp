#pragma once

#include <stdexcept>

namespace fockmz {

/// An iterative method failed to reach its tolerance.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace fockmz
