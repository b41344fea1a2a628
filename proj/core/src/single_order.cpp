#include "fracdiff/single_order.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/quad.hpp"

namespace fracdiff {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_time(double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << "time t = " << t << " must be non-negative and finite";
    throw DomainError(msg.str());
  }
}

// Half-period panels summed before extrapolation. The first kSkipPanels
// partial sums are left out of the extrapolation: the panels near the origin
// are irregular and slow the iterated averaging down considerably. The
// estimate over the shorter window kCheckPanels bounds the remaining error.
constexpr int kPanels = 64;
constexpr int kSkipPanels = 16;
constexpr int kCheckPanels = 56;

}  // namespace

FractionalOrder::FractionalOrder(double nu) : nu_(nu) {
  if (!(nu > 0.0 && nu <= 1.0)) {
    std::ostringstream msg;
    msg << "fractional order nu = " << nu << " outside (0, 1]";
    throw DomainError(msg.str());
  }
}

std::string_view to_string(GreenPath path) {
  switch (path) {
    case GreenPath::series: return "series";
    case GreenPath::integral: return "integral";
    case GreenPath::fourier_oracle: return "fourier_oracle";
    case GreenPath::mellin_oracle: return "mellin_oracle";
  }
  return "unknown";
}

namespace single_order {

double reduced_green(FractionalOrder order, double x, const SeriesPolicy& policy) {
  return 0.5 * mwright(0.5 * order.value(), std::abs(x), policy);
}

double green(FractionalOrder order, double x, double t, const SeriesPolicy& policy) {
  check_time(t);
  if (t == 0.0) {
    if (x == 0.0) return std::numeric_limits<double>::infinity();
    throw DomainError("green: u(x, 0) is the delta distribution; no pointwise value at x != 0");
  }
  const double scale = std::pow(t, -0.5 * order.value());
  return scale * reduced_green(order, x * scale, policy);
}

double contour_green(FractionalOrder order, double x, double t) {
  check_time(t);
  if (t == 0.0) throw DomainError("contour_green: t must be positive");
  const double scale = std::pow(t, -0.5 * order.value());
  const double y = std::abs(x) * scale;
  const double nu = 0.5 * order.value();
  if (y == 0.0) return 0.5 * scale * reciprocal_gamma(1.0 - nu);
  return 0.5 * scale * mwright_contour(nu, y);
}

double fourier_oracle_green(FractionalOrder order, double x, double t) {
  check_time(t);
  if (t == 0.0) throw DomainError("fourier_oracle_green: t must be positive");
  const MittagLefflerOrder ml(order.value());
  const double time_factor = std::pow(t, order.value());
  auto relaxation = [&](double kappa) {
    return mittag_leffler_neg(ml, kappa * kappa * time_factor);
  };

  quad::QuadOptions options;
  options.rel_tol = 1e-12;
  options.abs_tol = 1e-17;
  options.max_subdivisions = 500;

  const double ax = std::abs(x);
  if (ax == 0.0) {
    const double scale = 1.0 / std::sqrt(time_factor);
    return quad::integrate_to_infinity(relaxation, 0.0, options, scale).value / kPi;
  }

  // Panels between consecutive zeros (j + 1/2) pi / |x| of cos(kappa x).
  auto integrand = [&](double kappa) { return std::cos(kappa * ax) * relaxation(kappa); };
  std::vector<double> partial;
  partial.reserve(kPanels);
  double lower = 0.0;
  double sum = 0.0;
  for (int j = 0; j < kPanels; ++j) {
    const double upper = (j + 0.5) * kPi / ax;
    sum += quad::integrate_adaptive(integrand, lower, upper, options).value;
    partial.push_back(sum);
    lower = upper;
  }
  const auto full = quad::alternating_extrapolate(
      std::span<const double>(partial.data() + kSkipPanels, kPanels - kSkipPanels));
  const auto check = quad::alternating_extrapolate(
      std::span<const double>(partial.data() + kSkipPanels, kCheckPanels - kSkipPanels));
  const double drift = std::abs(full.value - check.value);
  if (drift > 1e-10 * std::max(1.0, std::abs(full.value))) {
    std::ostringstream msg;
    msg << "fourier_oracle_green: extrapolation did not settle at x = " << x << ", t = " << t
        << " (drift " << drift << ")";
    throw ConvergenceError(msg.str());
  }
  return full.value / kPi;
}

double mellin_oracle_green(FractionalOrder order, double x, double t,
                           const mellin::ContourSpec& contour) {
  check_time(t);
  if (t == 0.0) throw DomainError("mellin_oracle_green: t must be positive");
  if (x == 0.0) throw DomainError("mellin_oracle_green: the contour integral needs x != 0");
  const double scale = std::pow(t, -0.5 * order.value());
  return scale * mellin::mb_reduced_green(order.value(), std::abs(x) * scale, contour);
}

double moment(FractionalOrder order, int n, double t) {
  if (n < 0) throw DomainError("moment: order n must be non-negative");
  check_time(t);
  if (n == 0) return 1.0;
  if (t == 0.0) return 0.0;
  const double nu = order.value();
  return std::exp(std::lgamma(2.0 * n + 1.0) - std::lgamma(nu * n + 1.0) +
                  nu * n * std::log(t));
}

GreenEvaluation evaluate(FractionalOrder order, const std::vector<double>& xs, double t,
                         GreenPath path, const SeriesPolicy& policy) {
  GreenEvaluation out;
  out.xs = xs;
  out.t = t;
  out.path = path;
  out.values.reserve(xs.size());
  for (double x : xs) {
    switch (path) {
      case GreenPath::series:
        out.values.push_back(green(order, x, t, policy));
        break;
      case GreenPath::fourier_oracle:
        out.values.push_back(fourier_oracle_green(order, x, t));
        break;
      case GreenPath::mellin_oracle:
        out.values.push_back(mellin_oracle_green(order, x, t));
        break;
      case GreenPath::integral:
        out.values.push_back(contour_green(order, x, t));
        break;
    }
  }
  return out;
}

}  // namespace single_order
}  // namespace fracdiff
