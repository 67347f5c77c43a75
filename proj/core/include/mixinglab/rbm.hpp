#pragma once

#include <cstdint>
#include <vector>

#include "mixinglab/rng.hpp"

namespace mixinglab::rbm {

struct RbmParams {
  int n_visible = 0;
  int n_hidden = 0;
  std::vector<double> weights;  // row-major n_visible x n_hidden
  std::vector<double> visible_bias;
  std::vector<double> hidden_bias;

  /// W_ij = c/n everywhere, zero biases, n = n' — the one-parameter family.
  static RbmParams one_parameter(double c, int n);

  double w(int i, int j) const { return weights[static_cast<std::size_t>(i) * n_hidden + j]; }
};

struct Configuration {
  std::vector<std::uint8_t> visible;
  std::vector<std::uint8_t> hidden;
};

double energy(const RbmParams& params, const Configuration& y);

/// One alternating-Gibbs update: visible layer resampled from its
/// conditional given the hidden layer, then hidden given the new visible.
Configuration gibbs_step(const RbmParams& params, const Configuration& y,
                         RngStream& rng);

/// Exhaustive Boltzmann law over all 2^(n+n') configurations, assembled in
/// log space. Requires n + n' <= 16.
struct ExactLaw {
  int n_visible = 0;
  int n_hidden = 0;
  std::vector<double> probs;  // indexed by packed bits, visible bits low
  double log_z = 0.0;

  std::size_t index_of(const Configuration& y) const;
  Configuration config_of(std::size_t idx) const;
};

ExactLaw exact_law(const RbmParams& params);

struct EquivalenceReport {
  /// max over t <= t_steps of max-abs difference between the s_h-pushforward
  /// of the evolved sampler law and K^{2t} applied to the matching start.
  double max_abs_diff;
  /// min over t of TV(law X_{2t}, pi) <= TV(law Y_t, P) slack; >= 0 when the
  /// two-sided comparison holds.
  double min_sandwich_slack;
  bool pass;
};

/// Exhaustive tiny-n certification that Algorithm-style alternating updates
/// and the auxiliary chain agree. Requires n <= 6.
EquivalenceReport equivalence_check(double c, int n, long long t_steps);

}  // namespace mixinglab::rbm
