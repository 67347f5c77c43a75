#pragma once

#include <stdexcept>

namespace mixinglab {

/// Thrown when an analysis that is only meaningful in one dynamical regime
/// (attractive, critical, repelling) is invoked with a coupling value from
/// another regime.
class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mixinglab
