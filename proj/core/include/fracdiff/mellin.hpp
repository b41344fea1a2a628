#pragma once

// Mellin-Barnes integrals evaluated by the trapezoidal rule on a vertical
// line Re s = sigma. This path shares nothing with the power series except
// the complex gamma function, which is what makes it useful as an oracle.

#include <optional>

namespace fracdiff::mellin {

struct ContourSpec {
  double sigma = 0.5;
  // Truncation of |Im s|; chosen per call when empty.
  std::optional<double> half_span;
  int nodes = 4096;

  void validate() const;
};

struct ContourResult {
  double value = 0.0;
  double imag_residue = 0.0;  // imaginary part left over by the quadrature
  double half_span = 0.0;     // span actually used
  double endpoint_ratio = 0.0;  // |integrand| at the ends over its peak
};

/// U(x) = 1/(2x) * (1/(2 pi i)) int Gamma(1-s)/Gamma(1-beta s/2) x^s ds,
/// for 0 < beta <= 1 and x > 0.
ContourResult mb_reduced_green_detail(double beta, double x, const ContourSpec& contour = {});
double mb_reduced_green(double beta, double x, const ContourSpec& contour = {});

/// F(y) = (1/(2 pi i)) int Gamma(1-s) sin(pi gamma s/2) y^s ds,
/// for 0 < gamma < 1 and y > 0.
ContourResult mb_F_kernel_detail(double gamma, double y, const ContourSpec& contour = {});
double mb_F_kernel(double gamma, double y, const ContourSpec& contour = {});

}  // namespace fracdiff::mellin
