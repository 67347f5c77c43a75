#include "mixinglab/spectral.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>

#include "mixinglab/dynsys.hpp"
#include "mixinglab/errors.hpp"
#include "mixinglab/numerics.hpp"

namespace mixinglab::spectral {

namespace {

constexpr double kDetailedBalanceTol = 1e-9;

// Relative detailed-balance residual of the entry pair (i,j), computed from
// logs so that entries near 1e-300 are compared on equal footing.
double db_residual(double log_fwd, double log_bwd) {
  if (std::isinf(log_fwd) && std::isinf(log_bwd)) return 0.0;
  if (std::isinf(log_fwd) || std::isinf(log_bwd)) return 1.0;
  return std::fabs(-std::expm1(log_bwd - log_fwd));
}

void verify_detailed_balance(const chain::Kernel& kernel,
                             std::span<const double> log_pi) {
  const int dim = kernel.dim();
  double worst = 0.0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      const double fwd = log_pi[i] + kernel.logs(i, j);
      const double bwd = log_pi[j] + kernel.logs(j, i);
      worst = std::max(worst, db_residual(fwd, bwd));
    }
  }
  if (worst > kDetailedBalanceTol)
    throw std::invalid_argument("spectrum: detailed balance violated, residual " +
                                std::to_string(worst));
}

double flow_ratio(const chain::DenseMatrix& k2, const chain::Dist& pi,
                  const std::vector<int>& in_set) {
  const int dim = k2.dim();
  double flow = 0.0, mass = 0.0;
  for (int i = 0; i < dim; ++i) {
    if (!in_set[i]) continue;
    mass += pi.w[i];
    const auto row = k2.row(i);
    for (int j = 0; j < dim; ++j)
      if (!in_set[j]) flow += pi.w[i] * row[j];
  }
  return flow / (mass * (1.0 - mass));
}

chain::DenseMatrix square_kernel(const chain::Kernel& kernel) {
  const int dim = kernel.dim();
  chain::DenseMatrix k2(dim);
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      k(kernel.probs.row(0).data(), dim, dim);
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>
      out(k2.row(0).data(), dim, dim);
  out = k * k;
  return k2;
}

}  // namespace

SpectralReport spectrum(const chain::Kernel& kernel,
                        std::span<const double> log_pi) {
  const int dim = kernel.dim();
  if (static_cast<int>(log_pi.size()) != dim)
    throw std::invalid_argument("spectrum: log_pi dimension mismatch");
  verify_detailed_balance(kernel, log_pi);

  // Under detailed balance the symmetrization D^{1/2} K D^{-1/2} equals
  // sqrt(K_ij K_ji) entrywise, which is computable straight from the log
  // kernel with no pi ratios.
  Eigen::MatrixXd s(dim, dim);
  for (int i = 0; i < dim; ++i) {
    s(i, i) = kernel.probs(i, i);
    for (int j = i + 1; j < dim; ++j) {
      const double v = std::exp(0.5 * (kernel.logs(i, j) + kernel.logs(j, i)));
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("spectrum: eigensolver failed to converge");

  SpectralReport report;
  report.params = kernel.params;
  report.eigenvalues.assign(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + dim);
  const auto& ev = report.eigenvalues;
  report.lambda2_abs = dim >= 2 ? std::max(std::fabs(ev.front()), std::fabs(ev[dim - 2])) : 0.0;
  report.gap_K2 = 1.0 - report.lambda2_abs * report.lambda2_abs;
  return report;
}

ConductanceReport conductance_bruteforce(const chain::Kernel& kernel,
                                         const chain::Dist& pi) {
  const int dim = kernel.dim();
  const int n = dim - 1;
  if (n > 20)
    throw std::invalid_argument("conductance_bruteforce: n > 20 not enumerable");
  const chain::DenseMatrix k2 = square_kernel(kernel);

  ConductanceReport report;
  report.mode = ConductanceMode::BruteForce;
  report.phi = std::numeric_limits<double>::infinity();
  std::vector<int> in_set(dim, 0);
  const std::uint64_t total = (1ULL << dim) - 1;
  for (std::uint64_t mask = 1; mask < total; ++mask) {
    for (int i = 0; i < dim; ++i) in_set[i] = static_cast<int>((mask >> i) & 1ULL);
    const double ratio = flow_ratio(k2, pi, in_set);
    if (ratio < report.phi) {
      report.phi = ratio;
      report.argmin_set.clear();
      for (int i = 0; i < dim; ++i)
        if (in_set[i]) report.argmin_set.push_back(i);
    }
  }
  return report;
}

ConductanceReport conductance_interval(const chain::Kernel& kernel,
                                       const chain::Dist& pi) {
  const int dim = kernel.dim();
  const chain::DenseMatrix k2 = square_kernel(kernel);

  ConductanceReport report;
  report.mode = ConductanceMode::IntervalCuts;
  report.phi = std::numeric_limits<double>::infinity();
  int best_cut = 0;
  std::vector<int> in_set(dim, 0);
  for (int a = 0; a + 1 < dim; ++a) {
    in_set[a] = 1;
    const double ratio = flow_ratio(k2, pi, in_set);
    if (ratio < report.phi) {
      report.phi = ratio;
      best_cut = a;
    }
  }
  report.argmin_set.resize(static_cast<std::size_t>(best_cut) + 1);
  std::iota(report.argmin_set.begin(), report.argmin_set.end(), 0);
  return report;
}

CriticalTvBound critical_tv_bound(const chain::ChainParams& params,
                                  const chain::Dist& start, long long t) {
  const auto& constants = dynsys::critical_constants();
  if (std::fabs(params.c - constants.c_star) > 1e-9)
    throw RegimeError("critical_tv_bound: requires c = c_star");
  if (params.n <= 20)
    throw std::invalid_argument("critical_tv_bound: requires n > 20");
  if (t < 0) throw std::invalid_argument("critical_tv_bound: t must be >= 0");

  const auto log_pi = chain::stationary_log(params);
  if (start.size() != static_cast<int>(log_pi.size()))
    throw std::invalid_argument("critical_tv_bound: start dimension mismatch");

  // ||d mu/d pi - 1||^2 = sum mu_x^2 / pi_x - 1, kept in logs throughout.
  std::vector<double> terms;
  terms.reserve(log_pi.size());
  for (std::size_t x = 0; x < log_pi.size(); ++x) {
    const double mu_x = start.w[x];
    if (mu_x > 0.0) terms.push_back(2.0 * std::log(mu_x) - log_pi[x]);
  }
  const double log_sum = numerics::log_sum_exp(terms);
  // log(e^s - 1); s >= 0 always since sum mu^2/pi >= (sum mu)^2 = 1.
  double log_chi_sq;
  if (log_sum > 1e-12) {
    log_chi_sq = log_sum + std::log1p(-std::exp(-log_sum));
  } else {
    // mu ~ pi: e^s - 1 ~ s
    const double s = std::expm1(log_sum);
    log_chi_sq = s > 0 ? std::log(s) : -std::numeric_limits<double>::infinity();
  }

  CriticalTvBound out;
  out.log_chi_norm = 0.5 * log_chi_sq;
  const double n = params.n;
  const double log_gap_theory =
      2.0 * params.c - std::log(2048.0) - 200.0 - 4.0 * std::log(n);
  out.gap_theory = std::exp(log_gap_theory);

  const chain::Kernel kernel = chain::build_kernel(params);
  out.gap_spectral = spectrum(kernel, log_pi).gap_K2;

  const double half_t = static_cast<double>(t / 2);
  out.log_bound_theory =
      std::log(0.5) + out.log_chi_norm + half_t * std::log1p(-out.gap_theory);
  out.log_bound_spectral =
      std::log(0.5) + out.log_chi_norm + half_t * std::log1p(-out.gap_spectral);
  out.bound_theory = std::exp(out.log_bound_theory);
  out.bound_spectral = std::exp(out.log_bound_spectral);
  return out;
}

}  // namespace mixinglab::spectral
