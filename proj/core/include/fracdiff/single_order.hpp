#pragma once

// Fundamental solution of the time-fractional diffusion equation of a single
// order nu in (0, 1]:  D_t^nu u = u_xx,  u(x, 0) = delta(x).
//
// The solution is self-similar, u(x, t) = t^{-nu/2} U(|x| / t^{nu/2}), with
// the reduced Green function U(x) = M_{nu/2}(|x|) / 2.

#include <string_view>
#include <vector>

#include "fracdiff/mellin.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff {

/// Order nu of the Caputo time derivative, 0 < nu <= 1.
class FractionalOrder {
 public:
  explicit FractionalOrder(double nu);
  double value() const { return nu_; }

 private:
  double nu_;
};

enum class GreenPath { series, integral, fourier_oracle, mellin_oracle };

std::string_view to_string(GreenPath path);

/// Samples of u(x, t) on a spatial grid at fixed time, tagged with the
/// computation path that produced them.
struct GreenEvaluation {
  std::vector<double> xs;
  double t = 0.0;
  std::vector<double> values;
  GreenPath path = GreenPath::series;
};

namespace single_order {

double reduced_green(FractionalOrder order, double x, const SeriesPolicy& policy = {});

/// u(x, t). t = 0 is the distributional initial condition: x = 0 yields
/// +infinity, any other x throws DomainError.
double green(FractionalOrder order, double x, double t, const SeriesPolicy& policy = {});

/// u(x, t) from the steepest-descent Hankel integral of M_{nu/2}; this is
/// the 'integral' path.
double contour_green(FractionalOrder order, double x, double t);

/// u(x, t) = (1/pi) int_0^inf cos(kappa x) E_nu(-kappa^2 t^nu) dkappa, by
/// integrating between the zeros of the cosine and extrapolating the
/// alternating partial sums.
double fourier_oracle_green(FractionalOrder order, double x, double t);

/// u(x, t) through the Mellin-Barnes representation of U; needs nu < 1 or a
/// Gaussian-compatible contour and x != 0.
double mellin_oracle_green(FractionalOrder order, double x, double t,
                           const mellin::ContourSpec& contour = {});

/// Even moments mu_{2n}(t) = Gamma(2n + 1) / Gamma(nu n + 1) t^{nu n}.
double moment(FractionalOrder order, int n, double t);

/// Evaluates u on every grid point through the requested path.
GreenEvaluation evaluate(FractionalOrder order, const std::vector<double>& xs, double t,
                         GreenPath path = GreenPath::series, const SeriesPolicy& policy = {});

}  // namespace single_order
}  // namespace fracdiff
