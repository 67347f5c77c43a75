#pragma once

#include <vector>

#include "mixinglab/chain.hpp"

namespace mixinglab::spectral {

struct SpectralReport {
  chain::ChainParams params;
  /// Spectrum of K, ascending. Real because K is reversible.
  std::vector<double> eigenvalues;
  /// max |lambda_i| over all eigenvalues except one unit eigenvalue.
  double lambda2_abs = 0.0;
  /// G(K^2) = 1 - lambda2_abs^2.
  double gap_K2 = 0.0;
};

enum class ConductanceMode { BruteForce, IntervalCuts };

struct ConductanceReport {
  double phi = 0.0;
  /// Minimizing subset (brute-force mode only).
  std::vector<int> argmin_set;
  ConductanceMode mode = ConductanceMode::BruteForce;
};

/// Verifies detailed balance, symmetrizes S_ij = sqrt(K_ij K_ji) (the
/// D^{1/2} K D^{-1/2} conjugation collapses to this under reversibility,
/// which keeps states with log pi ~ -700 in play without over/underflow),
/// and runs a dense symmetric eigendecomposition.
SpectralReport spectrum(const chain::Kernel& kernel,
                        std::span<const double> log_pi);

/// Exact conductance of K^2 by enumerating all 2^(n+1) subsets; n <= 20.
ConductanceReport conductance_bruteforce(const chain::Kernel& kernel,
                                         const chain::Dist& pi);

/// Upper bound on Phi(K^2): minimum of the flow ratio over the n interval
/// cuts A = {0..a}.
ConductanceReport conductance_interval(const chain::Kernel& kernel,
                                       const chain::Dist& pi);

struct CriticalTvBound {
  double log_chi_norm;      // log || d mu / d pi - 1 ||
  double gap_theory;        // e^{2c} / (2048 e^{200} n^4)
  double gap_spectral;      // computed G(K^2)
  double log_bound_theory;  // log of (1/2) ||.|| (1 - gap_theory)^floor(t/2)
  double log_bound_spectral;
  double bound_theory;
  double bound_spectral;
};

/// The critical-case convergence bound evaluated in log space (the e^{200}
/// factor in the theoretical gap forbids anything else), together with the
/// sharper variant that substitutes the computed spectral gap.
/// Requires c = c_star and n > 20.
CriticalTvBound critical_tv_bound(const chain::ChainParams& params,
                                  const chain::Dist& start, long long t);

}  // namespace mixinglab::spectral
