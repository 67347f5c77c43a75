#pragma once

#include <span>
#include <vector>

namespace mixinglab::numerics {

/// Natural-log-scale probability: exp(value) lies in [0, 1] up to 1 ulp.
struct LogProb {
  double value;
};

/// ln Gamma(x) for x > 0. Relative error below 1e-12 on [1e-3, 1e6].
double log_gamma(double x);

/// Extended-precision ln Gamma used internally where cancellation between
/// large lgamma values would otherwise eat the error budget (binomial
/// coefficients at n ~ 1e4).
long double log_gamma_ext(long double x);

/// psi^(1)(x) = d^2/dx^2 ln Gamma(x) for x > 0. Satisfies psi1(x) >= 1/x.
double trigamma(double x);

/// ln sum_i exp(x_i) with max-shift; -inf entries are ignored, and the
/// result is -inf only when every entry is -inf.
double log_sum_exp(std::span<const double> xs);

/// ln(1 + e^z) without overflow for large |z|.
double log1p_exp(double z);

/// ln [ C(n,k) p^k (1-p)^(n-k) ]. p in [0,1]; degenerate p handled exactly.
LogProb log_binom_pmf(long long n, long long k, double p);

/// ln(0!), ..., ln(n!) in extended precision; shared by kernel and
/// stationary-law assembly.
std::vector<long double> log_factorials(long long n);

/// Regularized upper incomplete gamma Q(a, x); used for chi-square tail
/// probabilities in the verification suites.
double gamma_q(double a, double x);

}  // namespace mixinglab::numerics
