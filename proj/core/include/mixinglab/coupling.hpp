#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mixinglab/chain.hpp"

namespace mixinglab::coupling {

/// Two trajectories driven by identical uniform blocks; once they meet they
/// are advanced together (coalescence preserves the marginals since both
/// chains use the same kernel).
struct CoupledTrace {
  chain::ChainParams params;
  std::vector<int> xs;
  std::vector<int> xs_prime;
  std::optional<long long> meet_time;
};

struct DriftConstants {
  double c;
  int n;
  double k_c;      // sup (m_c^2)' < 1
  double lambda_c; // 1 - (1 - k_c) / (1 + |c|/4)
  double L_cn;     // (1 + |c|/4) sqrt(pi / (2n))
};

/// f_{c,n}(x; u) = n^{-1} sum_i 1[u_i <= m_c(x)]; marginally K_{c,n}(x, .)
/// for iid uniforms. Returns the integer state count.
int f_shared(const chain::ChainParams& params, int state,
             std::span<const double> uniforms);

struct ContractionReport {
  double closed_form;   // |m_c(x) - m_c(x')|
  double mc_mean;       // Monte Carlo estimate of E|f(x;U) - f(x';U)|
  double mc_se;         // standard error of the estimate
  double band_eps_c;    // numerically extracted contraction band radius
  double band_gamma_c;  // max |m_c'| over the band, < 1
  bool within_band;     // both states inside [x* - eps_c, x* + eps_c]
  bool mc_within_4se;
  bool bound_ok;        // closed form <= min{|c|/4, gamma_c (if in band)} |x - x'|
};

/// Verifies E|f(x;U) - f(x';U)| = |m_c(x) - m_c(x')| by closed form and by
/// Monte Carlo, and checks the contraction bound with (eps_c, gamma_c)
/// extracted numerically (band radius halved until max |m'| < 1).
ContractionReport contraction_check(const chain::ChainParams& params, int state,
                                    int state_prime, long long reps,
                                    RngStream& rng);

/// Requires c > c_star.
DriftConstants drift_constants(const chain::ChainParams& params);

struct DriftReport {
  DriftConstants constants;
  double max_violation;  // max over states of K V_c(x) - (lambda_c V_c(x) + L_cn)
  bool pass;
};

/// Exact row-sum expectations of V_c under the kernel at every state.
DriftReport drift_check(const chain::ChainParams& params);

CoupledTrace coupled_run(const chain::ChainParams& params, int state,
                         int state_prime, long long t, std::uint64_t seed);

struct GeometricReport {
  double rho_hat;          // fitted per-step TV decay ratio
  double lambda2_abs;      // from the spectral analysis
  double one_minus_gap;    // 1 - G(K^2) = lambda2_abs^2
  double slope;            // least-squares slope of log TV vs t
  std::vector<double> tv_from_zero;
  std::vector<double> tv_from_one;
  bool decays;             // slope < 0 on the fitted window
};

/// Exact TV curves from both extreme starts with a log-linear tail fit.
/// Requires c > c_star.
GeometricReport geometric_bound_check(const chain::ChainParams& params,
                                      long long t_max);

struct SlowMixingReport {
  double kappa;        // repulsion slope witness: m' <= -kappa on the band
  double eps;          // band radius around x*
  double psi;          // 2 (kappa - 1)^2 eps^2
  /// P_t split per the even/odd escape sets, exact.
  double escape_from_low;
  double escape_from_high;
  double tv_lower_bound;   // (1 - P_t) / 2
  double paper_lower_bound;  // 1/2 - 2 t e^{-psi n}
  double exact_tv_max;     // max over the two extreme starts
  bool oscillates;     // even steps concentrate on the start side, odd on the other
  bool pass;           // exact_tv_max >= both lower bounds
};

/// Two-chain witness of torpid mixing. Requires c < c_star.
SlowMixingReport slow_mixing_witness(const chain::ChainParams& params,
                                     long long t);

struct CloseCouplingReport {
  double max_tv_adjacent;  // max over adjacent pairs of TV(K^2(x,.), K^2(x',.))
  double tv_bound;         // 1 - e^c
  double max_m_diff;       // max over adjacent pairs of |m_c(x) - m_c(x+1/n)|
  double m_diff_bound;     // 1/2 - 1/(1 + e^{-c/n})
  bool pass;
};

/// Requires c = c_star.
CloseCouplingReport close_coupling_check(const chain::ChainParams& params);

}  // namespace mixinglab::coupling
