#pragma once

#include <optional>
#include <vector>

namespace mixinglab::dynsys {

/// x_star solves x e^x / (1 + e^x) = 1; c_star = -1 - x_star - e^{x_star}
/// is the coupling value at which the fixed point of m_c turns neutral.
struct CriticalConstants {
  double x_star;
  double c_star;
};

enum class Regime { Attractive, Critical, Repelling };

struct DynReport {
  double c;
  double fixed_point;
  double deriv_at_fp;   // m_c'(x*)
  double deriv2_at_fp;  // (m_c^2)'(x*)
  Regime regime;
};

/// Classification tolerance on | |m_c'(x*)| - 1 |.
inline constexpr double kRegimeTol = 1e-9;

/// Default iteration horizon for dyn_mixing_time.
inline constexpr long long kDynHorizon = 1'000'000;

/// m_c(x) = sigma(c x).
double m(double c, double x);

/// m_c'(x) = c sigma(cx) (1 - sigma(cx)); |m_c'| <= |c|/4.
double m_prime(double c, double x);

/// (m_c^2)'(x) = c^2 sigma'(cx) sigma'(c sigma(cx)); always >= 0.
double m2_prime(double c, double x);

CriticalConstants solve_critical_constants();

/// Cached copy of solve_critical_constants().
const CriticalConstants& critical_constants();

/// The unique x in [0,1] with m_c(x) = x, |m_c(x*) - x*| <= 1e-12.
double fixed_point(double c);

/// [m_c^0(x0), ..., m_c^t(x0)].
std::vector<double> iterate(double c, double x0, long long t);

/// Smallest t such that every iterate from t through t_max stays within eps
/// of x_c^*. Empty optional means the orbit was still violating the band at
/// the horizon; for the repelling regime that is the provably-correct answer
/// (the orbit never settles), for others it means "horizon too short".
std::optional<long long> dyn_mixing_time(double c, double x, double eps,
                                         long long t_max = kDynHorizon);

/// Grid maximum of (m_c^2)' over [0,1] with golden-section refinement.
double sup_m2_prime(double c);

DynReport analyze(double c);
Regime regime_of(double c);

}  // namespace mixinglab::dynsys
