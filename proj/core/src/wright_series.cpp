// Wright-type series summed in binary128. The M-function series cancels
// catastrophically as x grows (terms of size e^{+b x^c} summing to e^{-b x^c}),
// so the extra 17 decimal digits directly widen the range where the series is
// usable.

#include <quadmath.h>

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff {

namespace {

using quad_t = __float128;

const quad_t kPiQ = M_PIq;

// Running summation with the truncation and cancellation bookkeeping shared by
// every series in this file.
class SeriesAccumulator {
 public:
  explicit SeriesAccumulator(const SeriesPolicy& policy) : policy_(policy) {}

  // Returns true once the stopping rule is satisfied.
  bool add(quad_t term) {
    sum_ += term;
    ++terms_;
    const quad_t magnitude = fabsq(term);
    if (magnitude > max_term_) max_term_ = magnitude;
    small_run_ = (magnitude <= quad_t(policy_.rel_tol) * fabsq(sum_)) ? small_run_ + 1 : 0;
    if (small_run_ >= 3) done_ = true;
    return done_;
  }

  SeriesResult result(quad_t prefactor = 1) const {
    SeriesResult out;
    out.value = static_cast<double>(prefactor * sum_);
    out.terms = terms_;
    out.converged = done_;
    out.cancellation_ratio =
        sum_ == 0 ? std::numeric_limits<double>::infinity()
                  : static_cast<double>(max_term_ / fabsq(sum_));
    return out;
  }

 private:
  const SeriesPolicy& policy_;
  quad_t sum_ = 0;
  quad_t max_term_ = 0;
  int terms_ = 0;
  int small_run_ = 0;
  bool done_ = false;
};

// sin(pi a) with the argument reduced modulo 2 first, so that integer a gives
// an exact zero.
quad_t sin_pi(quad_t a) {
  quad_t r = fmodq(a, quad_t(2));
  if (r < 0) r += 2;
  if (r == 0 || r == 1) return 0;
  return sinq(kPiQ * r);
}

// 1 / Gamma(a) in binary128, exact zero at the poles.
quad_t reciprocal_gamma_q(quad_t a) {
  if (a > 0) return expq(-lgammaq(a));
  const quad_t s = sin_pi(a);
  if (s == 0) return 0;
  // 1/Gamma(a) = sin(pi a) Gamma(1 - a) / pi
  return s * expq(lgammaq(1 - a)) / kPiQ;
}

// c_k with M_nu(x) = sum_k c_k (-x)^k:
//   c_k = 1 / (k! Gamma(1 - nu (k + 1))) = sin(pi a) Gamma(a) / (pi k!),
// a = nu (k + 1).
std::vector<quad_t> mwright_coefficients(double nu, int count) {
  std::vector<quad_t> coeff(count);
  quad_t log_factorial = 0;
  const quad_t nu_q = nu;
  for (int k = 0; k < count; ++k) {
    if (k > 0) log_factorial += logq(quad_t(k));
    const quad_t a = nu_q * (k + 1);
    const quad_t s = sin_pi(a);
    coeff[k] = s == 0 ? quad_t(0) : s * expq(lgammaq(a) - log_factorial) / kPiQ;
  }
  return coeff;
}

struct CoefficientCache {
  std::mutex mutex;
  std::map<std::pair<double, int>, std::shared_ptr<const std::vector<quad_t>>> table;
};

CoefficientCache& coefficient_cache() {
  static CoefficientCache cache;
  return cache;
}

std::shared_ptr<const std::vector<quad_t>> cached_coefficients(double nu, int count) {
  auto& cache = coefficient_cache();
  std::lock_guard<std::mutex> lock(cache.mutex);
  auto& slot = cache.table[{nu, count}];
  if (!slot) slot = std::make_shared<const std::vector<quad_t>>(mwright_coefficients(nu, count));
  return slot;
}

struct CrossoverCache {
  std::mutex mutex;
  std::map<std::tuple<double, double, int, double>, double> table;
};

CrossoverCache& crossover_cache() {
  static CrossoverCache cache;
  return cache;
}

void check_nu(double nu) {
  if (!(nu > 0.0 && nu < 1.0)) {
    std::ostringstream msg;
    msg << "M-function order nu = " << nu << " outside (0, 1)";
    throw DomainError(msg.str());
  }
}

constexpr double kCrossoverStep = 0.25;
constexpr double kCrossoverLimit = 1000.0;

}  // namespace

SeriesResult wright_series(const WrightParams& params, double z, const SeriesPolicy& policy) {
  policy.validate();
  if (!std::isfinite(z)) throw DomainError("wright_series: non-finite argument");
  const quad_t lambda = params.lambda();
  const quad_t mu = params.mu();
  SeriesAccumulator acc(policy);
  quad_t power_over_factorial = 1;  // z^k / k!
  for (int k = 0; k < policy.max_terms; ++k) {
    if (k > 0) power_over_factorial *= quad_t(z) / k;
    if (acc.add(power_over_factorial * reciprocal_gamma_q(lambda * k + mu))) break;
  }
  return acc.result();
}

double wright(const WrightParams& params, double z, const SeriesPolicy& policy) {
  const SeriesResult r = wright_series(params, z, policy);
  if (!r.acceptable(policy)) {
    std::ostringstream msg;
    msg << "wright: series rejected at z = " << z << " (terms " << r.terms
        << ", cancellation ratio " << r.cancellation_ratio << ")";
    throw CancellationError(msg.str());
  }
  return r.value;
}

SeriesResult mwright_series(double nu, double x, const SeriesPolicy& policy) {
  check_nu(nu);
  policy.validate();
  if (!(x >= 0.0)) throw DomainError("mwright: x must be non-negative");
  const auto coeff = cached_coefficients(nu, policy.max_terms);
  SeriesAccumulator acc(policy);
  quad_t power = 1;  // (-x)^k
  const quad_t minus_x = -quad_t(x);
  for (int k = 0; k < policy.max_terms; ++k) {
    if (k > 0) power *= minus_x;
    if (acc.add((*coeff)[k] * power)) break;
  }
  return acc.result();
}

double mwright_crossover(double nu, const SeriesPolicy& policy) {
  check_nu(nu);
  policy.validate();
  auto& cache = crossover_cache();
  const auto key = std::make_tuple(nu, policy.rel_tol, policy.max_terms, policy.cancellation_limit);
  {
    std::lock_guard<std::mutex> lock(cache.mutex);
    auto it = cache.table.find(key);
    if (it != cache.table.end()) return it->second;
  }
  // Computed outside the lock; concurrent first callers produce the same value.
  // Last grid point still accepted by the guard; the cancellation ratio grows
  // monotonically in x, so the series is trusted everywhere below it.
  double crossover = kCrossoverLimit;
  for (double x = kCrossoverStep; x < kCrossoverLimit; x += kCrossoverStep) {
    if (!mwright_series(nu, x, policy).acceptable(policy)) {
      crossover = x - kCrossoverStep;
      break;
    }
  }
  std::lock_guard<std::mutex> lock(cache.mutex);
  return cache.table.emplace(key, crossover).first->second;
}

double mwright(double nu, double x, const SeriesPolicy& policy) {
  check_nu(nu);
  if (!(x >= 0.0)) throw DomainError("mwright: x must be non-negative");
  if (x == 0.0) return reciprocal_gamma(1.0 - nu);
  const double crossover = mwright_crossover(nu, policy);
  if (x < crossover) {
    const SeriesResult r = mwright_series(nu, x, policy);
    if (r.acceptable(policy)) return r.value;
  }
  return mwright_contour(nu, x);
}

double mwright_log(double nu, double x, const SeriesPolicy& policy) {
  check_nu(nu);
  if (!(x >= 0.0)) throw DomainError("mwright: x must be non-negative");
  if (x == 0.0) return -std::lgamma(1.0 - nu);
  if (x < mwright_crossover(nu, policy)) {
    const SeriesResult r = mwright_series(nu, x, policy);
    if (r.acceptable(policy) && r.value > 0.0) return std::log(r.value);
  }
  return mwright_contour_log(nu, x);
}

SeriesResult fox_wright_F_series(double gamma, double y, const SeriesPolicy& policy) {
  policy.validate();
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    std::ostringstream msg;
    msg << "fox_wright_F: gamma = " << gamma << " outside (0, 1]";
    throw DomainError(msg.str());
  }
  if (!(y >= 0.0)) throw DomainError("fox_wright_F: y must be non-negative");
  // sin((k + 1) theta) by rotating e^{i (k + 1) theta}.
  const quad_t theta = kPiQ * quad_t(gamma) / 2;
  const quad_t cos_t = cosq(theta);
  const quad_t sin_t = sinq(theta);
  quad_t re = cos_t;
  quad_t im = sin_t;
  SeriesAccumulator acc(policy);
  quad_t power_over_factorial = 1;  // (-y)^k / k!
  for (int k = 0; k < policy.max_terms; ++k) {
    if (k > 0) {
      power_over_factorial *= -quad_t(y) / k;
      const quad_t next_re = re * cos_t - im * sin_t;
      im = re * sin_t + im * cos_t;
      re = next_re;
    }
    if (acc.add(power_over_factorial * im)) break;
  }
  return acc.result(quad_t(y));
}

double fox_wright_F(double gamma, double y, const SeriesPolicy& policy) {
  if (y == 0.0) {
    fox_wright_F_series(gamma, 0.0, policy);  // argument validation
    return 0.0;
  }
  if (gamma == 1.0) return y * std::cos(y);
  const SeriesResult r = fox_wright_F_series(gamma, y, policy);
  if (r.acceptable(policy)) return r.value;
  return fox_wright_F_closed(gamma, y);
}

double fox_wright_psi02(double gamma, double y, const SeriesPolicy& policy) {
  constexpr double kPi = 3.14159265358979323846;
  if (y == 0.0) {
    fox_wright_F_series(gamma, 0.0, policy);
    return std::sin(0.5 * kPi * gamma) / kPi;
  }
  return fox_wright_F(gamma, y, policy) / (kPi * y);
}

}  // namespace fracdiff
