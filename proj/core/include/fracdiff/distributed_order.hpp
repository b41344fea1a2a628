#pragma once

// Fundamental solution of the time-fractional diffusion equation of
// distributed order,
//
//   int_0^1 b(beta) D_t^beta u dbeta = u_xx,   u(x, 0) = delta(x),
//
// for weights b made of discrete atoms plus an optional uniform density.
//
// Everything is driven by B(s) = int b(beta) s^beta dbeta evaluated on the
// branch cut s = r e^{i pi}, written as B = rho e^{i pi gamma}. Inverting the
// Laplace transform along the cut turns the solution into a single integral
// over r of the Fox-Wright kernel at rho^{1/2} |x|.

#include <complex>
#include <string>
#include <vector>

#include "fracdiff/specfun.hpp"

namespace fracdiff::distributed_order {

/// b(beta) = sum_j weight_j delta(beta - order_j) + uniform_weight on [0, 1].
class OrderWeight {
 public:
  struct Atom {
    double order;
    double weight;
  };

  /// Throws DomainError unless every order lies in (0, 1], orders are
  /// distinct, weights are positive and the total mass is 1 within 1e-12.
  /// With normalize = true the mass is rescaled to 1 instead.
  explicit OrderWeight(std::vector<Atom> atoms, double uniform_weight = 0.0,
                       bool normalize = false);

  static OrderWeight single(double order);
  static OrderWeight uniform();

  const std::vector<Atom>& atoms() const { return atoms_; }
  double uniform_weight() const { return uniform_weight_; }

  /// True for the weight delta(beta - 1), which has no branch cut.
  bool is_pure_normal_diffusion() const;
  std::string describe() const;

 private:
  std::vector<Atom> atoms_;
  double uniform_weight_;
};

/// B(r e^{i pi}) = rho e^{i pi gamma}.
struct RayValue {
  double rho = 0.0;
  double gamma = 0.0;
};

/// B(s) on the principal branch; s on the negative axis is taken on the upper
/// lip. Throws DomainError at s = 0.
std::complex<double> b_transform(const OrderWeight& weight, std::complex<double> s);

RayValue ray_decompose(const OrderWeight& weight, double r);

/// Same as ray_decompose at r = e^u, without forming r (so r may underflow).
RayValue ray_decompose_log(const OrderWeight& weight, double log_r);

/// Spectral density of the Fourier-domain solution on the cut:
/// K = (1/pi) kappa^2 rho sin(pi gamma) / (kappa^4 + 2 kappa^2 rho cos(pi gamma) + rho^2).
/// Exactly zero when gamma = 1.
double kernel_K(double kappa, const RayValue& ray);

/// Fourier transform of the solution, int_0^inf e^{-r t} K(kappa, r) dr / r.
double fourier_green(const OrderWeight& weight, double kappa, double t);

/// u(x, t) = (1/2) int_0^inf e^{-r t} / r rho^{1/2} 0Psi2(-rho^{1/2} |x|) dr.
double green(const OrderWeight& weight, double x, double t, const SeriesPolicy& policy = {});

/// phi_k(t) = int_0^inf e^{-r t} / r sin(pi gamma (k + 1) / 2) rho^{(k+1)/2} dr.
double phi_k(const OrderWeight& weight, int k, double t);

/// u(x, t) = (1 / (2 pi)) sum_k (-|x|)^k / k! phi_k(t), summed up to kmax.
/// Throws CancellationError when |x| is too large for the truncated series.
double green_series(const OrderWeight& weight, double x, double t, int kmax = 80);

/// Laplace transform of the second moment, 2 / (s B(s)), for real s > 0.
double second_moment_laplace(const OrderWeight& weight, double s);

/// mu_2(t) by fixed-Talbot inversion of 2 / (s B(s)), cross-checked at two
/// node counts.
double second_moment(const OrderWeight& weight, double t);

}  // namespace fracdiff::distributed_order
