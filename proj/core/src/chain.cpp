#include "mixinglab/chain.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mixinglab/dynsys.hpp"
#include "mixinglab/numerics.hpp"

namespace mixinglab::chain {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void require_valid(const ChainParams& params) {
  if (params.n < 1) throw std::invalid_argument("ChainParams: n must be >= 1");
  if (!std::isfinite(params.c)) throw std::invalid_argument("ChainParams: c must be finite");
}

}  // namespace

Dist Dist::point_mass(int n, int state) {
  if (state < 0 || state > n) throw std::invalid_argument("point_mass: state outside Omega_n");
  Dist d;
  d.w.assign(static_cast<std::size_t>(n) + 1, 0.0);
  d.w[static_cast<std::size_t>(state)] = 1.0;
  return d;
}

Kernel build_kernel(const ChainParams& params) {
  require_valid(params);
  const int n = params.n;
  Kernel kernel{params, DenseMatrix(n + 1), DenseMatrix(n + 1)};
  const auto lf = numerics::log_factorials(n);
  std::vector<long double> log_c(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) log_c[k] = lf[n] - lf[k] - lf[n - k];

  for (int i = 0; i <= n; ++i) {
    const double p = dynsys::m(params.c, static_cast<double>(i) / n);
    auto probs = kernel.probs.row(i);
    auto logs = kernel.logs.row(i);
    if (p <= 0.0 || p >= 1.0) {
      // sigma is strictly inside (0,1) in exact arithmetic; a double can
      // still round to an endpoint for extreme c*x.
      const int hit = p <= 0.0 ? 0 : n;
      for (int k = 0; k <= n; ++k) logs[k] = (k == hit) ? 0.0 : kNegInf;
    } else {
      const long double lp = std::log(static_cast<long double>(p));
      const long double lq = std::log1p(-static_cast<long double>(p));
      for (int k = 0; k <= n; ++k)
        logs[k] = static_cast<double>(log_c[k] + k * lp + (n - k) * lq);
    }
    for (int k = 0; k <= n; ++k) probs[k] = std::exp(logs[k]);
  }
  return kernel;
}

std::vector<double> stationary_log(const ChainParams& params) {
  require_valid(params);
  const int n = params.n;
  const auto lf = numerics::log_factorials(n);
  std::vector<long double> lw(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const long double soft =
        static_cast<long double>(numerics::log1p_exp(params.c * static_cast<double>(j) / n));
    lw[j] = lf[n] - lf[j] - lf[n - j] + static_cast<long double>(n) * soft;
  }
  long double mx = lw[0];
  for (const long double v : lw) mx = std::max(mx, v);
  long double s = 0.0L;
  for (const long double v : lw) s += std::exp(v - mx);
  const long double log_z = mx + std::log(s);
  std::vector<double> out(lw.size());
  for (std::size_t j = 0; j < lw.size(); ++j) out[j] = static_cast<double>(lw[j] - log_z);
  return out;
}

Dist stationary(const ChainParams& params) {
  const auto lw = stationary_log(params);
  Dist pi;
  pi.w.resize(lw.size());
  for (std::size_t j = 0; j < lw.size(); ++j) pi.w[j] = std::exp(lw[j]);
  return pi;
}

double tv_distance(const Dist& p, const Dist& q) {
  if (p.size() != q.size()) throw std::invalid_argument("tv_distance: length mismatch");
  double s = 0.0;
  for (int i = 0; i < p.size(); ++i) s += std::fabs(p.w[i] - q.w[i]);
  return 0.5 * s;
}

Dist evolve_step(const Kernel& kernel, const Dist& mu) {
  const int dim = kernel.dim();
  if (mu.size() != dim) throw std::invalid_argument("evolve_step: dimension mismatch");
  Dist out;
  out.w.assign(static_cast<std::size_t>(dim), 0.0);
  for (int i = 0; i < dim; ++i) {
    const double wi = mu.w[i];
    if (wi == 0.0) continue;
    const auto row = kernel.probs.row(i);
    for (int j = 0; j < dim; ++j) out.w[j] += wi * row[j];
  }
  return out;
}

Dist evolve(const Kernel& kernel, const Dist& start, long long t) {
  if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
  Dist mu = start;
  for (long long s = 0; s < t; ++s) mu = evolve_step(kernel, mu);
  return mu;
}

long long default_horizon(const ChainParams& params) {
  const auto regime = dynsys::regime_of(params.c);
  const double n = params.n;
  switch (regime) {
    case dynsys::Regime::Attractive:
      return static_cast<long long>(10.0 * n * std::log(std::max(n, 2.0))) + 100;
    case dynsys::Regime::Critical:
      return static_cast<long long>(10.0 * n * n * n);
    case dynsys::Regime::Repelling:
      return 10'000'000;
  }
  return 10'000'000;
}

std::optional<long long> exact_mixing_time(const Kernel& kernel, const Dist& pi,
                                           double eps, StartSet starts,
                                           long long t_max) {
  if (!(eps > 0.0) || !(eps < 1.0))
    throw std::invalid_argument("exact_mixing_time: eps must lie in (0,1)");
  if (t_max < 1) throw std::invalid_argument("exact_mixing_time: t_max must be >= 1");
  const int n = kernel.dim() - 1;
  std::vector<int> start_states;
  if (starts == StartSet::Extremes) {
    start_states = {0, n};
  } else {
    start_states.resize(static_cast<std::size_t>(n) + 1);
    std::iota(start_states.begin(), start_states.end(), 0);
  }
  long long tau = 0;
  for (const int s : start_states) {
    Dist mu = Dist::point_mass(n, s);
    long long t = 0;
    // TV to pi is non-increasing in t: stop at the first crossing.
    while (tv_distance(mu, pi) >= eps) {
      if (t == t_max) return std::nullopt;
      mu = evolve_step(kernel, mu);
      ++t;
    }
    tau = std::max(tau, t);
  }
  return tau;
}

std::optional<long long> exact_mixing_time(const ChainParams& params, double eps,
                                           StartSet starts, long long t_max) {
  const Kernel kernel = build_kernel(params);
  const Dist pi = stationary(params);
  if (t_max < 0) t_max = default_horizon(params);
  return exact_mixing_time(kernel, pi, eps, starts, t_max);
}

int sample_step(const ChainParams& params, int state, RngStream& rng) {
  require_valid(params);
  if (state < 0 || state > params.n)
    throw std::invalid_argument("sample_step: state outside Omega_n");
  const double p = dynsys::m(params.c, static_cast<double>(state) / params.n);
  int count = 0;
  for (int i = 0; i < params.n; ++i)
    if (rng.uniform() <= p) ++count;
  return count;
}

HoeffdingReport hoeffding_check(const ChainParams& params,
                                std::span<const double> eps_grid) {
  require_valid(params);
  for (const double e : eps_grid)
    if (!(e > 0)) throw std::invalid_argument("hoeffding_check: eps values must be > 0");
  const int n = params.n;
  const Kernel kernel = build_kernel(params);
  const double absdev_bound = std::sqrt(M_PI / (2.0 * n));

  HoeffdingReport report;
  report.min_window_margin = std::numeric_limits<double>::infinity();
  report.min_absdev_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= n; ++i) {
    const double mc = dynsys::m(params.c, static_cast<double>(i) / n);
    const auto row = kernel.probs.row(i);
    double absdev = 0.0;
    for (int k = 0; k <= n; ++k) absdev += row[k] * std::fabs(static_cast<double>(k) / n - mc);
    report.min_absdev_margin = std::min(report.min_absdev_margin, absdev_bound - absdev);
    for (const double eps : eps_grid) {
      double mass = 0.0;
      for (int k = 0; k <= n; ++k)
        if (std::fabs(static_cast<double>(k) / n - mc) < eps) mass += row[k];
      const double bound = 1.0 - 2.0 * std::exp(-2.0 * n * eps * eps);
      report.min_window_margin = std::min(report.min_window_margin, mass - bound);
    }
  }
  report.pass = report.min_window_margin >= -1e-12 && report.min_absdev_margin >= -1e-12;
  return report;
}

}  // namespace mixinglab::chain
