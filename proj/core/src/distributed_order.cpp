#include "fracdiff/distributed_order.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

#include "fracdiff/error.hpp"
#include "fracdiff/quad.hpp"

namespace fracdiff::distributed_order {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kMassTolerance = 1e-12;

// (s - 1) / log s, with the removable point s = 1 handled by its Taylor
// expansion 1 + h/2 - h^2/12 + h^3/24 (h = s - 1).
std::complex<double> uniform_factor(std::complex<double> s) {
  const std::complex<double> h = s - 1.0;
  if (std::abs(h) < 1e-3) {
    return 1.0 + h * (0.5 + h * (-1.0 / 12.0 + h / 24.0));
  }
  return h / std::log(s);
}

// (cos(pi beta), sin(pi beta)) with the end point beta = 1 exact.
std::complex<double> unit_pi(double beta) {
  if (beta == 1.0) return {-1.0, 0.0};
  if (beta == 0.5) return {0.0, 1.0};
  return {std::cos(kPi * beta), std::sin(kPi * beta)};
}

RayValue to_ray(std::complex<double> b) {
  RayValue out;
  out.rho = std::abs(b);
  out.gamma = std::atan2(b.imag(), b.real()) / kPi;
  return out;
}

// Integrals of the form int_0^inf e^{-r t} h(log r) dr / r.
//
// In u = log r the integrand is e^{-t e^u} h(u). Below u1 = -log t the map
// u = u1 - c (1/w^2 - 1) absorbs slow (even algebraic |u|^{-3/2}) decay as
// u -> -inf, which the uniform weight produces; above r1 = 1/t the map
// r = r1 + L v / (1 - v) covers the exponential tail, with L widened for
// integrands that grow like r^p before the exponential wins.
struct RayIntegral {
  double value;
  double error;
};

RayIntegral integrate_ray(const std::function<double(double)>& h, double t, double growth,
                          const quad::QuadOptions& options) {
  const double u1 = -std::log(t);
  const double r1 = 1.0 / t;
  constexpr double c = 4.0;

  auto lower = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double inv_w2 = 1.0 / (w * w);
    const double u = u1 - c * (inv_w2 - 1.0);
    if (!std::isfinite(u)) return 0.0;
    const double value = h(u);
    if (value == 0.0) return 0.0;
    return std::exp(-t * std::exp(u)) * value * 2.0 * c * inv_w2 / w;
  };

  const double scale = (1.0 + growth) / t;
  auto upper = [&](double v) {
    if (v >= 1.0) return 0.0;
    const double one_minus = 1.0 - v;
    const double r = r1 + scale * v / one_minus;
    const double damping = std::exp(-t * r);
    if (damping == 0.0 || !std::isfinite(r)) return 0.0;
    const double value = h(std::log(r));
    return damping * value / r * scale / (one_minus * one_minus);
  };

  quad::QuadOptions local = options;
  local.throw_on_failure = false;
  const auto lo = quad::integrate_adaptive(lower, 0.0, 1.0, local);
  const auto hi = quad::integrate_adaptive(upper, 0.0, 1.0, local);
  return {lo.value + hi.value, lo.abs_error_estimate + hi.abs_error_estimate};
}

void check_time(double t, const char* where) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream msg;
    msg << where << ": time t = " << t << " must be positive and finite";
    throw DomainError(msg.str());
  }
}

void check_branch_cut(const OrderWeight& weight, const char* where) {
  if (weight.is_pure_normal_diffusion()) {
    std::ostringstream msg;
    msg << where << ": the weight delta(beta - 1) has no branch cut; "
        << "evaluate it as the single-order solution with nu = 1";
    throw DomainError(msg.str());
  }
}

double largest_order(const OrderWeight& weight) {
  double largest = weight.uniform_weight() > 0.0 ? 1.0 : 0.0;
  for (const auto& atom : weight.atoms()) largest = std::max(largest, atom.order);
  return largest;
}

// The phi_k series is summed in double from quadrature values good to about
// 1e-12, so a cancellation ratio beyond 1e6 leaves fewer than six digits.
constexpr double kPhiSeriesCancellationLimit = 1e6;

}  // namespace

OrderWeight::OrderWeight(std::vector<Atom> atoms, double uniform_weight, bool normalize)
    : atoms_(std::move(atoms)), uniform_weight_(uniform_weight) {
  if (!(uniform_weight_ >= 0.0) || !std::isfinite(uniform_weight_)) {
    throw DomainError("OrderWeight: uniform weight must be non-negative");
  }
  double mass = uniform_weight_;
  for (const auto& atom : atoms_) {
    if (!(atom.order > 0.0 && atom.order <= 1.0)) {
      std::ostringstream msg;
      msg << "OrderWeight: order " << atom.order << " outside (0, 1]";
      throw DomainError(msg.str());
    }
    if (!(atom.weight > 0.0) || !std::isfinite(atom.weight)) {
      std::ostringstream msg;
      msg << "OrderWeight: weight of order " << atom.order << " must be positive";
      throw DomainError(msg.str());
    }
    mass += atom.weight;
  }
  std::sort(atoms_.begin(), atoms_.end(),
            [](const Atom& a, const Atom& b) { return a.order < b.order; });
  for (std::size_t i = 1; i < atoms_.size(); ++i) {
    if (atoms_[i].order == atoms_[i - 1].order) {
      std::ostringstream msg;
      msg << "OrderWeight: order " << atoms_[i].order << " listed twice";
      throw DomainError(msg.str());
    }
  }
  if (!(mass > 0.0)) throw DomainError("OrderWeight: weight carries no mass");
  if (normalize) {
    for (auto& atom : atoms_) atom.weight /= mass;
    uniform_weight_ /= mass;
  } else if (std::abs(mass - 1.0) > kMassTolerance) {
    std::ostringstream msg;
    msg.precision(15);
    msg << "OrderWeight: total mass " << mass << " differs from 1 (pass normalize to rescale)";
    throw DomainError(msg.str());
  }
}

OrderWeight OrderWeight::single(double order) { return OrderWeight({{order, 1.0}}); }

OrderWeight OrderWeight::uniform() { return OrderWeight({}, 1.0); }

bool OrderWeight::is_pure_normal_diffusion() const {
  return uniform_weight_ == 0.0 && atoms_.size() == 1 && atoms_.front().order == 1.0;
}

std::string OrderWeight::describe() const {
  std::ostringstream out;
  out.precision(12);
  bool first = true;
  for (const auto& atom : atoms_) {
    if (!first) out << ',';
    out << atom.order << ':' << atom.weight;
    first = false;
  }
  if (uniform_weight_ > 0.0) {
    if (!first) out << ',';
    out << "uniform:" << uniform_weight_;
  }
  return out.str();
}

std::complex<double> b_transform(const OrderWeight& weight, std::complex<double> s) {
  if (s == 0.0) throw DomainError("b_transform: s = 0 is outside the domain");
  std::complex<double> total = 0.0;
  for (const auto& atom : weight.atoms()) total += atom.weight * std::pow(s, atom.order);
  if (weight.uniform_weight() > 0.0) total += weight.uniform_weight() * uniform_factor(s);
  return total;
}

RayValue ray_decompose_log(const OrderWeight& weight, double log_r) {
  std::complex<double> total = 0.0;
  for (const auto& atom : weight.atoms()) {
    total += atom.weight * std::exp(atom.order * log_r) * unit_pi(atom.order);
  }
  if (weight.uniform_weight() > 0.0) {
    // (s - 1) / log s at s = r e^{i pi}: -(r + 1) / (log r + i pi)
    total += weight.uniform_weight() * (-(std::exp(log_r) + 1.0)) /
             std::complex<double>(log_r, kPi);
  }
  return to_ray(total);
}

RayValue ray_decompose(const OrderWeight& weight, double r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ray_decompose: r must be positive");
  std::complex<double> total = 0.0;
  for (const auto& atom : weight.atoms()) {
    total += atom.weight * std::pow(r, atom.order) * unit_pi(atom.order);
  }
  if (weight.uniform_weight() > 0.0) {
    total += weight.uniform_weight() * (-(r + 1.0)) / std::complex<double>(std::log(r), kPi);
  }
  return to_ray(total);
}

double kernel_K(double kappa, const RayValue& ray) {
  if (ray.gamma == 1.0 || kappa == 0.0) return 0.0;
  const double k2 = kappa * kappa;
  const double sin_g = std::sin(kPi * ray.gamma);
  const double cos_g = std::cos(kPi * ray.gamma);
  const double denom = k2 * k2 + 2.0 * k2 * ray.rho * cos_g + ray.rho * ray.rho;
  if (denom == 0.0) return 0.0;
  return k2 * ray.rho * sin_g / (kPi * denom);
}

double fourier_green(const OrderWeight& weight, double kappa, double t) {
  check_time(t, "fourier_green");
  check_branch_cut(weight, "fourier_green");
  if (kappa == 0.0) return 1.0;
  auto h = [&](double u) { return kernel_K(kappa, ray_decompose_log(weight, u)); };
  quad::QuadOptions options;
  options.rel_tol = 1e-11;
  options.abs_tol = 1e-15;
  options.max_subdivisions = 4000;
  const auto r = integrate_ray(h, t, 1.0, options);
  if (r.error > std::max(1e-8 * std::abs(r.value), 1e-12)) {
    throw ConvergenceError("fourier_green: r-quadrature did not converge");
  }
  return r.value;
}

double green(const OrderWeight& weight, double x, double t, const SeriesPolicy& policy) {
  check_time(t, "distributed green");
  check_branch_cut(weight, "distributed green");
  policy.validate();
  const double ax = std::abs(x);
  auto h = [&](double u) {
    const RayValue ray = ray_decompose_log(weight, u);
    if (ray.rho == 0.0) return 0.0;
    const double root = std::sqrt(ray.rho);
    return 0.5 * root * fox_wright_psi02(ray.gamma, root * ax, policy);
  };
  quad::QuadOptions options;
  options.rel_tol = 1e-11;
  options.abs_tol = 1e-15;
  options.max_subdivisions = 4000;
  const auto r = integrate_ray(h, t, 0.5 * largest_order(weight), options);
  if (r.error > std::max(1e-8 * std::abs(r.value), 1e-12)) {
    std::ostringstream msg;
    msg << "distributed green: r-quadrature did not converge at x = " << x << ", t = " << t
        << " (error estimate " << r.error << ")";
    throw ConvergenceError(msg.str());
  }
  return r.value;
}

double phi_k(const OrderWeight& weight, int k, double t) {
  check_time(t, "phi_k");
  check_branch_cut(weight, "phi_k");
  if (k < 0) throw DomainError("phi_k: k must be non-negative");
  const double half_power = 0.5 * (k + 1);
  auto amplitude = [&](const RayValue& ray) {
    return ray.rho == 0.0 ? 0.0 : std::pow(ray.rho, half_power);
  };
  auto h = [&](double u) {
    const RayValue ray = ray_decompose_log(weight, u);
    return std::sin(kPi * ray.gamma * half_power) * amplitude(ray);
  };
  auto envelope = [&](double u) { return amplitude(ray_decompose_log(weight, u)); };

  const double growth = half_power * largest_order(weight);
  quad::QuadOptions coarse;
  coarse.rel_tol = 1e-4;
  coarse.max_subdivisions = 500;
  const double scale = integrate_ray(envelope, t, growth, coarse).value;

  quad::QuadOptions options;
  options.rel_tol = 1e-12;
  options.abs_tol = 1e-14 * scale;
  options.max_subdivisions = 4000;
  const auto r = integrate_ray(h, t, growth, options);
  if (r.error > std::max(1e-9 * std::abs(r.value), 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "phi_k: quadrature did not converge for k = " << k << ", t = " << t;
    throw ConvergenceError(msg.str());
  }
  return r.value;
}

double green_series(const OrderWeight& weight, double x, double t, int kmax) {
  check_time(t, "distributed green_series");
  if (kmax < 0) throw DomainError("green_series: kmax must be non-negative");
  const double ax = std::abs(x);
  double sum = 0.0;
  double max_term = 0.0;
  double power_over_factorial = 1.0;  // (-x)^k / k!
  int small_run = 0;
  bool converged = false;
  for (int k = 0; k <= kmax; ++k) {
    if (k > 0) power_over_factorial *= -ax / k;
    if (power_over_factorial == 0.0) {
      converged = true;
      break;
    }
    const double term = power_over_factorial * phi_k(weight, k, t);
    sum += term;
    max_term = std::max(max_term, std::abs(term));
    small_run = (std::abs(term) <= 1e-13 * std::abs(sum)) ? small_run + 1 : 0;
    if (small_run >= 3) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "green_series: not converged after " << kmax + 1 << " terms at x = " << x;
    throw ConvergenceError(msg.str());
  }
  if (max_term > kPhiSeriesCancellationLimit * std::abs(sum)) {
    std::ostringstream msg;
    msg << "green_series: cancellation too severe at x = " << x << " (max term " << max_term
        << ", sum " << sum << ")";
    throw CancellationError(msg.str());
  }
  return sum / (2.0 * kPi);
}

double second_moment_laplace(const OrderWeight& weight, double s) {
  if (!(s > 0.0)) throw DomainError("second_moment_laplace: s must be positive");
  return 2.0 / (s * b_transform(weight, s).real());
}

double second_moment(const OrderWeight& weight, double t) {
  check_time(t, "second_moment");
  auto transform = [&](std::complex<double> s) {
    return 2.0 / (s * b_transform(weight, s));
  };
  return quad::talbot_invert_checked(transform, t, 32, 48, 1e-8);
}

}  // namespace fracdiff::distributed_order
