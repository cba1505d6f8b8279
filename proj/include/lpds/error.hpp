#pragma once

#include <stdexcept>
#include <string>

namespace lpds {

/// Raised for malformed input (degenerate lattices, bad text, bad arguments).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace lpds
