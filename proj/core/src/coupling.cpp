#include "mixinglab/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mixinglab/dynsys.hpp"
#include "mixinglab/errors.hpp"
#include "mixinglab/spectral.hpp"
#include "mixinglab/stats.hpp"

namespace mixinglab::coupling {

namespace {

void require_state(const chain::ChainParams& params, int state, const char* who) {
  if (state < 0 || state > params.n)
    throw std::invalid_argument(std::string(who) + ": state outside Omega_n");
}

void require_attractive(const chain::ChainParams& params, const char* who) {
  if (dynsys::regime_of(params.c) != dynsys::Regime::Attractive)
    throw RegimeError(std::string(who) + ": requires c > c_star");
}

// Largest band radius around x* (halving from 0.9 min(x*, 1-x*)) on which
// max |m_c'| stays below 1, together with that maximum. Only meaningful in
// the attractive regime.
struct Band {
  double eps_c;
  double gamma_c;
};

Band extract_band(double c) {
  const double xs = dynsys::fixed_point(c);
  double eps = 0.9 * std::min(xs, 1.0 - xs);
  for (int halvings = 0; halvings < 60; ++halvings) {
    double worst = 0.0;
    constexpr int kGrid = 1000;
    for (int i = 0; i <= kGrid; ++i) {
      const double x = xs - eps + 2.0 * eps * i / kGrid;
      worst = std::max(worst, std::fabs(dynsys::m_prime(c, x)));
    }
    if (worst < 1.0) return {eps, worst};
    eps *= 0.5;
  }
  throw RegimeError("extract_band: no contraction band found (c <= c_star?)");
}

double tv_span(std::span<const double> p, std::span<const double> q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) s += std::fabs(p[i] - q[i]);
  return 0.5 * s;
}

}  // namespace

int f_shared(const chain::ChainParams& params, int state,
             std::span<const double> uniforms) {
  require_state(params, state, "f_shared");
  if (static_cast<int>(uniforms.size()) != params.n)
    throw std::invalid_argument("f_shared: need exactly n uniforms");
  const double mc = dynsys::m(params.c, static_cast<double>(state) / params.n);
  int count = 0;
  for (const double u : uniforms)
    if (u <= mc) ++count;
  return count;
}

ContractionReport contraction_check(const chain::ChainParams& params, int state,
                                    int state_prime, long long reps,
                                    RngStream& rng) {
  require_state(params, state, "contraction_check");
  require_state(params, state_prime, "contraction_check");
  if (reps < 2) throw std::invalid_argument("contraction_check: reps must be >= 2");

  const int n = params.n;
  const double x = static_cast<double>(state) / n;
  const double x_prime = static_cast<double>(state_prime) / n;

  ContractionReport report{};
  report.closed_form =
      std::fabs(dynsys::m(params.c, x) - dynsys::m(params.c, x_prime));

  std::vector<double> block(static_cast<std::size_t>(n));
  double sum = 0.0, sum_sq = 0.0;
  for (long long r = 0; r < reps; ++r) {
    rng.fill_uniform(block);
    const double d =
        std::fabs(f_shared(params, state, block) - f_shared(params, state_prime, block)) /
        static_cast<double>(n);
    sum += d;
    sum_sq += d * d;
  }
  report.mc_mean = sum / static_cast<double>(reps);
  const double var =
      std::max(0.0, (sum_sq - sum * sum / static_cast<double>(reps)) /
                        static_cast<double>(reps - 1));
  report.mc_se = std::sqrt(var / static_cast<double>(reps));
  report.mc_within_4se =
      std::fabs(report.mc_mean - report.closed_form) <= 4.0 * report.mc_se + 1e-15;

  const bool attractive = dynsys::regime_of(params.c) == dynsys::Regime::Attractive;
  if (attractive) {
    const Band band = extract_band(params.c);
    report.band_eps_c = band.eps_c;
    report.band_gamma_c = band.gamma_c;
    const double xs = dynsys::fixed_point(params.c);
    report.within_band = std::fabs(x - xs) <= band.eps_c &&
                         std::fabs(x_prime - xs) <= band.eps_c;
  } else {
    report.band_eps_c = 0.0;
    report.band_gamma_c = std::numeric_limits<double>::quiet_NaN();
    report.within_band = false;
  }
  const double lipschitz = std::fabs(params.c) / 4.0;
  const double rate = report.within_band
                          ? std::min(lipschitz, report.band_gamma_c)
                          : lipschitz;
  report.bound_ok = report.closed_form <= rate * std::fabs(x - x_prime) + 1e-12;
  return report;
}

DriftConstants drift_constants(const chain::ChainParams& params) {
  require_attractive(params, "drift_constants");
  DriftConstants out;
  out.c = params.c;
  out.n = params.n;
  out.k_c = dynsys::sup_m2_prime(params.c);
  const double denom = 1.0 + std::fabs(params.c) / 4.0;
  out.lambda_c = 1.0 - (1.0 - out.k_c) / denom;
  out.L_cn = denom * std::sqrt(M_PI / (2.0 * params.n));
  if (!(out.lambda_c < 1.0))
    throw RegimeError("drift_constants: lambda_c >= 1 (c <= c_star?)");
  return out;
}

DriftReport drift_check(const chain::ChainParams& params) {
  const DriftConstants constants = drift_constants(params);
  const int n = params.n;
  const chain::Kernel kernel = chain::build_kernel(params);
  const double xs = dynsys::fixed_point(params.c);

  std::vector<double> v(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const double x = static_cast<double>(j) / n;
    v[j] = std::fabs(dynsys::m(params.c, x) - xs) + std::fabs(x - xs);
  }

  DriftReport report{constants, -std::numeric_limits<double>::infinity(), false};
  for (int i = 0; i <= n; ++i) {
    const auto row = kernel.probs.row(i);
    double kv = 0.0;
    for (int j = 0; j <= n; ++j) kv += row[j] * v[j];
    report.max_violation = std::max(
        report.max_violation, kv - (constants.lambda_c * v[i] + constants.L_cn));
  }
  report.pass = report.max_violation <= 1e-12;
  return report;
}

CoupledTrace coupled_run(const chain::ChainParams& params, int state,
                         int state_prime, long long t, std::uint64_t seed) {
  require_state(params, state, "coupled_run");
  require_state(params, state_prime, "coupled_run");
  if (t < 0) throw std::invalid_argument("coupled_run: t must be >= 0");

  RngStream rng(seed);
  std::vector<double> block(static_cast<std::size_t>(params.n));
  CoupledTrace trace;
  trace.params = params;
  trace.xs.reserve(static_cast<std::size_t>(t) + 1);
  trace.xs_prime.reserve(static_cast<std::size_t>(t) + 1);
  int a = state, b = state_prime;
  trace.xs.push_back(a);
  trace.xs_prime.push_back(b);
  if (a == b) trace.meet_time = 0;
  for (long long step = 1; step <= t; ++step) {
    rng.fill_uniform(block);
    a = f_shared(params, a, block);
    // After coalescence both chains follow the same draw.
    b = trace.meet_time ? a : f_shared(params, b, block);
    trace.xs.push_back(a);
    trace.xs_prime.push_back(b);
    if (!trace.meet_time && a == b) trace.meet_time = step;
  }
  return trace;
}

GeometricReport geometric_bound_check(const chain::ChainParams& params,
                                      long long t_max) {
  require_attractive(params, "geometric_bound_check");
  if (t_max < 2) throw std::invalid_argument("geometric_bound_check: t_max too small");

  const chain::Kernel kernel = chain::build_kernel(params);
  const auto log_pi = chain::stationary_log(params);
  const chain::Dist pi = chain::stationary(params);

  GeometricReport report{};
  const auto spec = spectral::spectrum(kernel, log_pi);
  report.lambda2_abs = spec.lambda2_abs;
  report.one_minus_gap = 1.0 - spec.gap_K2;

  chain::Dist lo = chain::Dist::point_mass(params.n, 0);
  chain::Dist hi = chain::Dist::point_mass(params.n, params.n);
  report.tv_from_zero.push_back(chain::tv_distance(lo, pi));
  report.tv_from_one.push_back(chain::tv_distance(hi, pi));
  for (long long t = 1; t <= t_max; ++t) {
    lo = chain::evolve_step(kernel, lo);
    hi = chain::evolve_step(kernel, hi);
    report.tv_from_zero.push_back(chain::tv_distance(lo, pi));
    report.tv_from_one.push_back(chain::tv_distance(hi, pi));
  }

  // Log-linear fit on the asymptotic window, away from both the transient
  // and the rounding floor.
  std::vector<double> ts, ys;
  for (const auto* curve : {&report.tv_from_zero, &report.tv_from_one}) {
    for (std::size_t t = 0; t < curve->size(); ++t) {
      const double d = (*curve)[t];
      if (d > 1e-12 && d < 1e-2) {
        ts.push_back(static_cast<double>(t));
        ys.push_back(std::log(d));
      }
    }
  }
  if (ts.size() >= 3) {
    const auto fit = stats::fit_line(ts, ys);
    report.slope = fit.slope;
    report.rho_hat = std::exp(fit.slope);
    report.decays = fit.slope < 0.0;
  } else {
    // TV hit zero immediately (c = 0 is the canonical case).
    report.slope = -std::numeric_limits<double>::infinity();
    report.rho_hat = 0.0;
    report.decays = true;
  }
  return report;
}

SlowMixingReport slow_mixing_witness(const chain::ChainParams& params,
                                     long long t) {
  if (dynsys::regime_of(params.c) != dynsys::Regime::Repelling)
    throw RegimeError("slow_mixing_witness: requires c < c_star");
  if (t < 0) throw std::invalid_argument("slow_mixing_witness: t must be >= 0");

  const int n = params.n;
  const double xs = dynsys::fixed_point(params.c);

  SlowMixingReport report{};
  // kappa strictly between 1 and |m'(x*)|; shrink the band until the slope
  // certificate m' <= -kappa holds throughout.
  report.kappa = 0.5 * (1.0 + std::fabs(dynsys::m_prime(params.c, xs)));
  double eps = 0.9 * std::min(xs, 1.0 - xs);
  for (int halvings = 0; halvings < 60; ++halvings) {
    double worst = -std::numeric_limits<double>::infinity();
    constexpr int kGrid = 2000;
    for (int i = 0; i <= kGrid; ++i) {
      const double x = xs - eps + 2.0 * eps * i / kGrid;
      worst = std::max(worst, dynsys::m_prime(params.c, x));
    }
    if (worst <= -report.kappa) break;
    eps *= 0.5;
  }
  report.eps = eps;
  report.psi = 2.0 * (report.kappa - 1.0) * (report.kappa - 1.0) * eps * eps;

  const chain::Kernel kernel = chain::build_kernel(params);
  const chain::Dist pi = chain::stationary(params);
  chain::Dist from_low = chain::Dist::point_mass(n, 0);
  chain::Dist from_high = chain::Dist::point_mass(n, n);

  auto mass_low_side = [&](const chain::Dist& mu) {  // mass in A_-(eps)
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
      if (static_cast<double>(j) / n <= xs - eps) s += mu.w[j];
    return s;
  };
  auto mass_high_side = [&](const chain::Dist& mu) {  // mass in A_+(eps)
    double s = 0.0;
    for (int j = 0; j <= n; ++j)
      if (static_cast<double>(j) / n >= xs + eps) s += mu.w[j];
    return s;
  };

  bool oscillates = true;
  for (long long s = 1; s <= t; ++s) {
    from_low = chain::evolve_step(kernel, from_low);
    from_high = chain::evolve_step(kernel, from_high);
    // Even steps: the chain from x_- sits on the low side, the chain from
    // x_+ on the high side; odd steps swap (m_c is decreasing).
    const bool even = (s % 2 == 0);
    const double target_low = even ? mass_low_side(from_low) : mass_high_side(from_low);
    const double target_high = even ? mass_high_side(from_high) : mass_low_side(from_high);
    if (target_low < 0.5 || target_high < 0.5) oscillates = false;
  }
  const bool even = (t % 2 == 0);
  report.escape_from_low =
      1.0 - (even ? mass_low_side(from_low) : mass_high_side(from_low));
  report.escape_from_high =
      1.0 - (even ? mass_high_side(from_high) : mass_low_side(from_high));
  if (t == 0) {
    report.escape_from_low = 0.0;
    report.escape_from_high = 0.0;
  }

  const double p_t = report.escape_from_low + report.escape_from_high;
  report.tv_lower_bound = 0.5 * (1.0 - p_t);
  report.paper_lower_bound =
      0.5 - 2.0 * static_cast<double>(t) * std::exp(-report.psi * n);
  report.exact_tv_max =
      std::max(chain::tv_distance(from_low, pi), chain::tv_distance(from_high, pi));
  report.oscillates = oscillates;
  report.pass = report.exact_tv_max >= report.tv_lower_bound - 1e-12 &&
                report.exact_tv_max >= report.paper_lower_bound - 1e-12;
  return report;
}

CloseCouplingReport close_coupling_check(const chain::ChainParams& params) {
  const auto& constants = dynsys::critical_constants();
  if (std::fabs(params.c - constants.c_star) > 1e-9)
    throw RegimeError("close_coupling_check: requires c = c_star");

  const int n = params.n;
  const chain::Kernel kernel = chain::build_kernel(params);

  // Rows of K^2 by two exact evolution steps per start.
  std::vector<chain::Dist> rows;
  rows.reserve(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j)
    rows.push_back(chain::evolve(kernel, chain::Dist::point_mass(n, j), 2));

  CloseCouplingReport report{};
  report.tv_bound = 1.0 - std::exp(params.c);
  report.m_diff_bound = 0.5 - dynsys::m(params.c, 1.0 / n);
  for (int j = 0; j < n; ++j) {
    report.max_tv_adjacent =
        std::max(report.max_tv_adjacent, chain::tv_distance(rows[j], rows[j + 1]));
    const double diff = std::fabs(dynsys::m(params.c, static_cast<double>(j) / n) -
                                  dynsys::m(params.c, static_cast<double>(j + 1) / n));
    report.max_m_diff = std::max(report.max_m_diff, diff);
  }
  report.pass = report.max_tv_adjacent <= report.tv_bound + 1e-12 &&
                report.max_m_diff <= report.m_diff_bound + 1e-15;
  return report;
}

}  // namespace mixinglab::coupling
