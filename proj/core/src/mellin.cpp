#include "fracdiff/mellin.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::mellin {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kAutoRatio = 1e-16;     // endpoint decay chosen automatically
constexpr double kRejectRatio = 1e-14;   // endpoint weight that fails a call

using LogIntegrand = std::function<std::complex<double>(std::complex<double>)>;

// log of the integrand; working in logs keeps both Gamma factors, which decay
// or grow like e^{pi |Im s| / 2}, away from under- and overflow.
ContourResult integrate_line(const LogIntegrand& log_integrand, const ContourSpec& contour) {
  contour.validate();
  auto log_mag = [&](double y) {
    return log_integrand({contour.sigma, y}).real();
  };

  // Peak magnitude on a coarse scan, then walk out until the integrand has
  // decayed below kAutoRatio of it.
  double peak = log_mag(0.0);
  for (double y = 0.25; y <= 8.0; y += 0.25) {
    peak = std::max({peak, log_mag(y), log_mag(-y)});
  }
  double span;
  if (contour.half_span) {
    span = *contour.half_span;
  } else {
    const double target = peak + std::log(kAutoRatio);
    span = 8.0;
    while (std::max(log_mag(span), log_mag(-span)) > target) {
      span *= 1.25;
      if (span > 1e4) throw TruncationError("Mellin-Barnes integrand does not decay on the contour");
    }
  }
  const double endpoint = std::max(log_mag(span), log_mag(-span));
  ContourResult out;
  out.half_span = span;
  out.endpoint_ratio = std::exp(endpoint - peak);
  if (out.endpoint_ratio > kRejectRatio) {
    std::ostringstream msg;
    msg << "Mellin-Barnes contour truncated at |Im s| = " << span
        << " while the integrand is still " << out.endpoint_ratio << " of its peak";
    throw TruncationError(msg.str());
  }

  // (1/(2 pi i)) int_{sigma - i Y}^{sigma + i Y} g(s) ds = (1/(2 pi)) int g(sigma + i y) dy
  const int n = contour.nodes;
  const double h = 2.0 * span / n;
  std::complex<double> sum = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double y = -span + j * h;
    const double w = (j == 0 || j == n) ? 0.5 : 1.0;
    sum += w * std::exp(log_integrand({contour.sigma, y}));
  }
  sum *= h / (2.0 * kPi);
  out.value = sum.real();
  out.imag_residue = sum.imag();
  return out;
}

}  // namespace

void ContourSpec::validate() const {
  if (!(sigma > 0.0 && sigma < 1.0)) {
    throw DomainError("ContourSpec: sigma must lie in (0, 1)");
  }
  if (nodes < 64) throw DomainError("ContourSpec: at least 64 nodes required");
  if (half_span && !(*half_span > 0.0)) {
    throw DomainError("ContourSpec: half_span must be positive");
  }
}

ContourResult mb_reduced_green_detail(double beta, double x, const ContourSpec& contour) {
  if (!(beta > 0.0 && beta <= 1.0)) throw DomainError("mb_reduced_green: beta outside (0, 1]");
  if (!(x > 0.0)) throw DomainError("mb_reduced_green: x must be positive");
  const double log_x = std::log(x);
  auto log_integrand = [&](std::complex<double> s) {
    return lgamma_complex(1.0 - s) - lgamma_complex(1.0 - 0.5 * beta * s) + s * log_x;
  };
  ContourResult r = integrate_line(log_integrand, contour);
  r.value /= 2.0 * x;
  r.imag_residue /= 2.0 * x;
  return r;
}

double mb_reduced_green(double beta, double x, const ContourSpec& contour) {
  return mb_reduced_green_detail(beta, x, contour).value;
}

ContourResult mb_F_kernel_detail(double gamma, double y, const ContourSpec& contour) {
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("mb_F_kernel: gamma outside (0, 1)");
  if (!(y > 0.0)) throw DomainError("mb_F_kernel: y must be positive");
  const double log_y = std::log(y);
  auto log_integrand = [&](std::complex<double> s) {
    return lgamma_complex(1.0 - s) + std::log(std::sin(0.5 * kPi * gamma * s)) + s * log_y;
  };
  return integrate_line(log_integrand, contour);
}

double mb_F_kernel(double gamma, double y, const ContourSpec& contour) {
  return mb_F_kernel_detail(gamma, y, contour).value;
}

}  // namespace fracdiff::mellin
