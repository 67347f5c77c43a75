#pragma once

#include <cstdint>
#include <random>
#include <span>

namespace mixinglab {

/// Deterministic uniform stream. Distinct (seed, stream) pairs yield
/// decorrelated sequences; each parallel worker gets its own stream id.
/// Doubles are built from the top 53 bits of the engine output, so results
/// do not depend on the standard library's distribution implementations.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return gen_(); }

  /// U[0, 1)
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  void fill_uniform(std::span<double> out) {
    for (double& u : out) u = uniform();
  }

  /// Bernoulli(p) draw from one uniform.
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

}  // namespace mixinglab
