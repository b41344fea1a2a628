#pragma once

// Shared numerical kernels: adaptive Gauss-Kronrod quadrature, alternating
// series extrapolation and fixed-Talbot Laplace inversion.

#include <complex>
#include <functional>
#include <span>

namespace fracdiff::quad {

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  int evaluations = 0;
};

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_subdivisions = 2000;
  // When false a result that misses the tolerance is returned as-is and the
  // caller inspects abs_error_estimate.
  bool throw_on_failure = true;
};

using RealFunction = std::function<double(double)>;
using LaplaceTransform = std::function<std::complex<double>(std::complex<double>)>;

/// Single 15-point Kronrod panel with the embedded 7-point Gauss estimate.
QuadResult gauss_kronrod15(const RealFunction& f, double a, double b);

/// Globally adaptive bisection driven by the G7/K15 pair. Throws
/// ConvergenceError when max_subdivisions is exhausted (unless disabled).
QuadResult integrate_adaptive(const RealFunction& f, double a, double b,
                              const QuadOptions& options);
QuadResult integrate_adaptive(const RealFunction& f, double a, double b,
                              double rel_tol);

/// Integral over [a, inf) through the map x = a + scale * w / (1 - w).
/// This is the documented substitution pattern for semi-infinite ranges;
/// the integrand must decay fast enough for the mapped form to stay finite.
QuadResult integrate_to_infinity(const RealFunction& f, double a,
                                 const QuadOptions& options, double scale = 1.0);

struct Extrapolation {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Limit of an eventually alternating sequence of partial sums by iterated
/// averaging (the Euler transform applied to partial sums). Requires at least
/// four entries; throws DomainError when the tail does not alternate.
Extrapolation alternating_extrapolate(std::span<const double> partial_sums);

/// Fixed-Talbot inversion of F at time t with the given number of nodes.
/// F must be analytic off the negative real axis.
double talbot_invert(const LaplaceTransform& F, double t, int nodes = 32);

/// Runs talbot_invert at two node counts and throws InversionError if they
/// disagree by more than rel_tol (relative to the first result).
double talbot_invert_checked(const LaplaceTransform& F, double t, int nodes,
                             int check_nodes, double rel_tol);

}  // namespace fracdiff::quad
