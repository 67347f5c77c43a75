#pragma once

#include <span>
#include <vector>

namespace mixinglab::stats {

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Pearson chi-square tail probability P(X >= stat) for `dof` degrees of
/// freedom.
double chi_square_pvalue(double stat, double dof);

/// Biased lag autocovariance normalized by lag 0.
std::vector<double> autocorrelation(std::span<const double> xs, int max_lag);

}  // namespace mixinglab::stats
