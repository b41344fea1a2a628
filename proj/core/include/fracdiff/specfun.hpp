#pragma once

// Special functions behind the Green functions: gamma, erfc, the
// Mittag-Leffler function on the negative axis, the Wright function and its
// M-function specialisation, and the Fox-Wright kernel of the
// distributed-order solution.

#include <complex>

namespace fracdiff {

/// Controls every Wright-type series evaluation.
///
/// Summation stops once three consecutive terms fall below rel_tol relative
/// to the running sum, or after max_terms terms. The series are accumulated
/// in binary128, so a result is trusted while max|term| / |result| stays
/// below cancellation_limit.
struct SeriesPolicy {
  double rel_tol = 1e-16;
  int max_terms = 250;
  double cancellation_limit = 1e12;

  void validate() const;
  friend bool operator==(const SeriesPolicy&, const SeriesPolicy&) = default;
};

/// Outcome of a raw series summation, before any fallback is applied.
struct SeriesResult {
  double value = 0.0;
  int terms = 0;
  double cancellation_ratio = 1.0;  // max|term| / |value|
  bool converged = false;

  bool acceptable(const SeriesPolicy& policy) const {
    return converged && cancellation_ratio <= policy.cancellation_limit;
  }
};

/// Order of E_beta restricted to 0 < beta <= 1.
class MittagLefflerOrder {
 public:
  explicit MittagLefflerOrder(double beta);
  double value() const { return beta_; }

 private:
  double beta_;
};

/// Parameters (lambda, mu) of W_{lambda,mu}(z); lambda > -1.
class WrightParams {
 public:
  WrightParams(double lambda, double mu);
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }

 private:
  double lambda_;
  double mu_;
};

double gamma_real(double x);

/// 1/Gamma(x); zero at the poles.
double reciprocal_gamma(double x);

/// A logarithm of Gamma(z); exp() of it is Gamma(z). For Re z >= 1/2 this is
/// the principal branch.
std::complex<double> lgamma_complex(std::complex<double> z);
std::complex<double> gamma_complex(std::complex<double> z);

double erfc(double x);

/// E_beta(-x) for x >= 0. Series for x <= 1, spectral integral beyond.
double mittag_leffler_neg(MittagLefflerOrder order, double x);
double mittag_leffler_neg_series(MittagLefflerOrder order, double x);
double mittag_leffler_neg_spectral(MittagLefflerOrder order, double x);

/// Large-argument tail t^{-beta} / Gamma(1 - beta) of E_beta(-t^beta).
double mittag_leffler_neg_tail(MittagLefflerOrder order, double t);

/// Raw Wright series sum_k z^k / (k! Gamma(lambda k + mu)).
SeriesResult wright_series(const WrightParams& params, double z,
                           const SeriesPolicy& policy = {});
/// Wright function; throws CancellationError when the series is rejected.
double wright(const WrightParams& params, double z, const SeriesPolicy& policy = {});

/// Raw M-function series; coefficients are cached per (nu, max_terms).
SeriesResult mwright_series(double nu, double x, const SeriesPolicy& policy = {});

/// Last point of the 0.25-spaced grid where the M-series is still accepted by
/// the policy. Computed once per (nu, policy) and cached.
double mwright_crossover(double nu, const SeriesPolicy& policy = {});

/// M_nu(x), 0 < nu < 1, x >= 0: series below the crossover, steepest-descent
/// contour integral above it.
double mwright(double nu, double x, const SeriesPolicy& policy = {});

/// M_nu(x) for x > 0 from the Hankel representation
/// (1/2 pi i) int e^{s - x s^nu} s^{nu - 1} ds, integrated along the steepest
/// descent path through the saddle point. No cancellation at any x.
double mwright_contour(double nu, double x, double rel_tol = 1e-13);
/// log of mwright_contour; stays finite where M_nu underflows.
double mwright_contour_log(double nu, double x, double rel_tol = 1e-13);

/// log M_nu(x), same paths as mwright.
double mwright_log(double nu, double x, const SeriesPolicy& policy = {});

/// Constants of the stretched exponential A x^a exp(-b x^c).
struct StretchedExponential {
  double A = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(double x) const;
  /// Integral of the expression over [x0, inf), by the incomplete gamma
  /// function of the substituted variable.
  double tail_integral(double x0, int power = 0) const;
};

/// Constants for U(x) = M_{beta/2}(x) / 2 at large x (so beta = 1 gives the
/// Gaussian 1/(2 sqrt(pi)) exp(-x^2/4)). Accepts 0 < beta < 2.
StretchedExponential mwright_asymptotic_constants(double beta);

/// Leading-order approximation of M_{beta/2}(x), i.e. 2 A x^a exp(-b x^c).
double mwright_asymptotic(double beta, double x);

/// Fox-Wright kernel F(y) = y sum_k (-y)^k / k! sin(pi gamma (k + 1) / 2).
double fox_wright_F(double gamma, double y, const SeriesPolicy& policy = {});
SeriesResult fox_wright_F_series(double gamma, double y, const SeriesPolicy& policy = {});

/// The 0Psi2 function with parameters (1 - gamma/2, -gamma/2), (gamma/2,
/// gamma/2) at -y, which equals F(y) / (pi y) and is finite at y = 0.
double fox_wright_psi02(double gamma, double y, const SeriesPolicy& policy = {});

/// The kernel series summed in closed form:
/// F(y) = y exp(-y cos(theta)) sin(theta - y sin(theta)), theta = pi gamma / 2.
double fox_wright_F_closed(double gamma, double y);

}  // namespace fracdiff
