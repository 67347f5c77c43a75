#pragma once

#include <cstdint>
#include <vector>

#include "mixinglab/chain.hpp"

namespace mixinglab::iso {

/// The stationary pmf extended from Omega_n to [0,1] through Gamma factors:
/// omega_n(x) = C_n Gamma(n+1) / [Gamma(nx+1) Gamma(n-nx+1)] (1+e^{cx})^n.
/// The normalizer is fixed so the restriction to Omega_n is the stationary
/// law of the chain.
class ExtendedDensity {
 public:
  explicit ExtendedDensity(chain::ChainParams params);

  double log_omega(double x) const;
  /// Exact trigamma form of (d^2/dx^2) log omega_n.
  double d2_log_omega(double x) const;

  double log_normalizer() const { return log_c_n_; }
  const chain::ChainParams& params() const { return params_; }

 private:
  chain::ChainParams params_;
  double log_c_n_;
};

struct LogConcReport {
  double max_defect;
  double argmax_x;
  bool below_800;
  bool positive_somewhere;  // the density is not log-concave
};

/// Maximizes d2_log_omega over a 1e4 grid plus golden-section refinement.
/// Requires c = c_star and n > 20.
LogConcReport logconc_defect_check(const chain::ChainParams& params);

/// Partition of Omega_n into S1/S2/S3, stored as one label (1, 2 or 3) per
/// state. Valid when S1 and S2 are separated by at least 3/(2n).
struct Partition {
  std::vector<std::int8_t> label;
};

/// Throws std::invalid_argument with a diagnostic if the separation
/// condition fails.
void validate_partition(const Partition& p, int n);

/// log pi(S3) - [log pi(S1) + log pi(S2) - 100 - 2 log n]; >= 0 iff the
/// partition inequality holds. Empty S1 or S2 yields +inf (trivial case).
double partition_log_slack(std::span<const double> log_pi, const Partition& p,
                           int n);

Partition random_partition(int n, RngStream& rng);

struct IsoReport {
  bool pass;
  double min_slack_log;
  long long checked;
  long long trivial;  // partitions with S1 or S2 empty
};

/// All interval triples S1 = [0,a], S3 = gap, S2 = [b,1] with b - a >= 2.
IsoReport iso_partition_check_intervals(const chain::ChainParams& params);
IsoReport iso_partition_check_random(const chain::ChainParams& params,
                                     long long count, std::uint64_t seed);
/// The proof's surrogate inequality omega(a3) >= e^{-100} omega(a1) omega(a2)
/// over all grid triples a1 < a3 < a2.
IsoReport iso_surrogate_check(const chain::ChainParams& params);

}  // namespace mixinglab::iso
