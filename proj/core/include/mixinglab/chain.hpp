#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mixinglab/rng.hpp"

namespace mixinglab::chain {

/// Identifies one chain instance: state space Omega_n = {j/n}, transition
/// X' ~ Bin(n, sigma(c x)) / n.
struct ChainParams {
  double c = 0.0;
  int n = 1;  // >= 1
};

/// Row-major dense square matrix over Omega_n ((n+1) x (n+1)).
class DenseMatrix {
 public:
  DenseMatrix() = default;
  explicit DenseMatrix(int dim, double fill = 0.0)
      : dim_(dim), data_(static_cast<std::size_t>(dim) * dim, fill) {}

  double& operator()(int i, int j) { return data_[idx(i, j)]; }
  double operator()(int i, int j) const { return data_[idx(i, j)]; }
  std::span<double> row(int i) { return {data_.data() + idx(i, 0), static_cast<std::size_t>(dim_)}; }
  std::span<const double> row(int i) const { return {data_.data() + idx(i, 0), static_cast<std::size_t>(dim_)}; }
  int dim() const { return dim_; }

 private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(i) * dim_ + j;
  }
  int dim_ = 0;
  std::vector<double> data_;
};

/// Transition kernel K_{c,n}. Row i is the Binomial(n, sigma(c i/n)) pmf;
/// `logs` keeps the log-space values the probabilities were exponentiated
/// from, which the spectral symmetrization relies on.
struct Kernel {
  ChainParams params;
  DenseMatrix probs;
  DenseMatrix logs;

  int dim() const { return probs.dim(); }
};

/// Probability vector over Omega_n.
struct Dist {
  std::vector<double> w;

  static Dist point_mass(int n, int state);
  int size() const { return static_cast<int>(w.size()); }
};

enum class StartSet { Extremes, All };

Kernel build_kernel(const ChainParams& params);

/// Normalized log stationary weights: log pi propto log C(n,nx) + n log(1+e^{cx}).
std::vector<double> stationary_log(const ChainParams& params);
Dist stationary(const ChainParams& params);

/// (1/2) sum |p_i - q_i|.
double tv_distance(const Dist& p, const Dist& q);

Dist evolve_step(const Kernel& kernel, const Dist& mu);
Dist evolve(const Kernel& kernel, const Dist& start, long long t);

/// Regime-dependent default horizon for exact mixing times:
/// 10 n ln n + 100 (attractive), 10 n^3 (critical), 1e7 (repelling).
long long default_horizon(const ChainParams& params);

/// Max over the start set of the first t with TV(K^t(x,.), pi) < eps.
/// TV to pi is non-increasing in t, so the per-start search stops at the
/// first crossing. Empty optional: some start was still above eps at t_max.
std::optional<long long> exact_mixing_time(const Kernel& kernel, const Dist& pi,
                                           double eps, StartSet starts,
                                           long long t_max);
std::optional<long long> exact_mixing_time(const ChainParams& params,
                                           double eps = 0.25,
                                           StartSet starts = StartSet::Extremes,
                                           long long t_max = -1);

/// One transition drawn through the shared-uniform representation
/// (n iid uniforms compared against m_c(x)), so the same stream can drive
/// coupled chains.
int sample_step(const ChainParams& params, int state, RngStream& rng);

struct HoeffdingReport {
  bool pass = false;
  /// min over (x, eps) of [exact window mass] - [1 - 2 exp(-2 n eps^2)]
  double min_window_margin = 0.0;
  /// min over x of sqrt(pi/(2n)) - E|X - m_c(x)|
  double min_absdev_margin = 0.0;
};

/// Exact-binomial verification of the concentration window bound and the
/// mean absolute deviation bound at every state.
HoeffdingReport hoeffding_check(const ChainParams& params,
                                std::span<const double> eps_grid);

}  // namespace mixinglab::chain
