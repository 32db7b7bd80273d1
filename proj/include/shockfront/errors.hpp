#pragma once

#include <stdexcept>
#include <string>

namespace shockfront {

/// Thrown when a solver or quadrature fails to meet its tolerance, a root
/// bracket cannot be established, or an input configuration is dynamically
/// inconsistent (e.g. a non-merging pair of shocks).
class numeric_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Thrown for malformed scenario configuration files. The message carries
/// the offending field path.
class config_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace shockfront
