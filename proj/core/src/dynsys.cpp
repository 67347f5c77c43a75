#include "mixinglab/dynsys.hpp"

#include <cmath>
#include <stdexcept>

namespace mixinglab::dynsys {

namespace {

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double sigmoid_prime(double z) {
  const double s = sigmoid(z);
  return s * (1.0 - s);
}

// Golden-section maximization of f on [lo, hi].
template <typename F>
double golden_max(F f, double lo, double hi) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-14; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    }
  }
  return std::max(f1, f2);
}

}  // namespace

double m(double c, double x) { return sigmoid(c * x); }

double m_prime(double c, double x) { return c * sigmoid_prime(c * x); }

double m2_prime(double c, double x) {
  return c * c * sigmoid_prime(c * x) * sigmoid_prime(c * sigmoid(c * x));
}

CriticalConstants solve_critical_constants() {
  // x e^x / (1 + e^x) = 1 has its root in [1, 2]; the LHS is increasing.
  auto f = [](double x) { return x * std::exp(x) / (1.0 + std::exp(x)) - 1.0; };
  double lo = 1.0, hi = 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-16; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) < 0)
      lo = mid;
    else
      hi = mid;
  }
  const double x_star = 0.5 * (lo + hi);
  return {x_star, -1.0 - x_star - std::exp(x_star)};
}

const CriticalConstants& critical_constants() {
  static const CriticalConstants k = solve_critical_constants();
  return k;
}

double fixed_point(double c) {
  // g(x) = m_c(x) - x has g(0) = 1/2 > 0, g(1) < 0, and a unique root, so
  // the sign changes exactly once and bisection applies for every c.
  auto g = [c](double x) { return m(c, x) - x; };
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> iterate(double c, double x0, long long t) {
  if (x0 < 0.0 || x0 > 1.0) throw std::domain_error("iterate: x0 outside [0,1]");
  if (t < 0) throw std::domain_error("iterate: t must be >= 0");
  std::vector<double> orbit;
  orbit.reserve(static_cast<std::size_t>(t) + 1);
  double x = x0;
  orbit.push_back(x);
  for (long long k = 0; k < t; ++k) {
    x = m(c, x);
    orbit.push_back(x);
  }
  return orbit;
}

std::optional<long long> dyn_mixing_time(double c, double x, double eps,
                                         long long t_max) {
  if (!(eps > 0)) throw std::invalid_argument("dyn_mixing_time: eps must be > 0");
  if (x < 0.0 || x > 1.0) throw std::domain_error("dyn_mixing_time: x outside [0,1]");
  const double xs = fixed_point(c);
  long long last_bad = -1;
  double xt = x;
  for (long long t = 0; t <= t_max; ++t) {
    if (std::fabs(xt - xs) >= eps) last_bad = t;
    if (t < t_max) xt = m(c, xt);
  }
  // Violating at the horizon itself: no certificate that the orbit ever
  // settles (and for c < c_star it provably never does).
  if (last_bad == t_max) return std::nullopt;
  return last_bad + 1;
}

double sup_m2_prime(double c) {
  constexpr int kGrid = 100'000;
  double best = 0.0;
  int best_i = 0;
  for (int i = 0; i <= kGrid; ++i) {
    const double v = m2_prime(c, static_cast<double>(i) / kGrid);
    if (v > best) {
      best = v;
      best_i = i;
    }
  }
  const double lo = std::max(0.0, (best_i - 1.0) / kGrid);
  const double hi = std::min(1.0, (best_i + 1.0) / kGrid);
  const double refined = golden_max([c](double x) { return m2_prime(c, x); }, lo, hi);
  return std::max(best, refined);
}

DynReport analyze(double c) {
  const double xs = fixed_point(c);
  const double d1 = m_prime(c, xs);
  const double d2 = m2_prime(c, xs);
  Regime regime;
  const double excess = std::fabs(d1) - 1.0;
  if (excess < -kRegimeTol)
    regime = Regime::Attractive;
  else if (excess > kRegimeTol)
    regime = Regime::Repelling;
  else
    regime = Regime::Critical;
  return {c, xs, d1, d2, regime};
}

Regime regime_of(double c) { return analyze(c).regime; }

}  // namespace mixinglab::dynsys
