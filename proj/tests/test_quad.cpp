#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "fracdiff/error.hpp"
#include "fracdiff/quad.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using cplx = std::complex<double>;

TEST_CASE("polynomial integral and conservative error estimate") {
  const auto r = quad::integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(r.value == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(r.abs_error_estimate >= 0.0);
  CHECK(r.evaluations > 0);
  CHECK(std::abs(r.value - 1.0 / 3.0) <= 10.0 * r.abs_error_estimate + 1e-300);
}

TEST_CASE("exponential over the half line via the mapped endpoint") {
  quad::QuadOptions opts;
  opts.rel_tol = 1e-12;
  const auto r = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0, opts);
  CHECK(std::abs(r.value - 1.0) < 1e-12);
  CHECK(std::abs(r.value - 1.0) <= 10.0 * r.abs_error_estimate + 1e-15);
}

TEST_CASE("spectral Mittag-Leffler integrand reproduces e erfc(1)") {
  // E_{1/2}(-1) = (1/pi) int_0^inf e^{-s} s^{-1/2} / (s + 1) ds; substitute s = v^2.
  quad::QuadOptions opts;
  opts.rel_tol = 1e-12;
  auto f = [](double v) { return 2.0 * std::exp(-v * v) / (v * v + 1.0); };
  const auto r = quad::integrate_to_infinity(f, 0.0, opts);
  const double value = r.value / oracle::kPi;
  CHECK(value == doctest::Approx(0.4275835761).epsilon(1e-10));
  CHECK(oracle::rel_err(value, oracle::ml_half(1.0)) < 1e-12);
  CHECK(std::abs(r.value - oracle::kPi * oracle::ml_half(1.0)) <= 10.0 * r.abs_error_estimate + 1e-15);
}

TEST_CASE("endpoint singularity is resolved by bisection") {
  const auto r = quad::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10);
  CHECK(r.value == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(std::abs(r.value - 2.0) <= 10.0 * r.abs_error_estimate);
}

TEST_CASE("single Kronrod panel is exact for low-degree polynomials") {
  const auto r = quad::gauss_kronrod15([](double x) { return std::pow(x, 20); }, -1.0, 1.0);
  CHECK(r.value == doctest::Approx(2.0 / 21.0).epsilon(1e-14));
  CHECK(r.evaluations == 15);
}

TEST_CASE("quadrature errors") {
  CHECK_THROWS_AS(quad::integrate_adaptive([](double x) { return x; }, 1.0, 0.0, 1e-10), DomainError);
  quad::QuadOptions opts;
  opts.max_subdivisions = 40;
  CHECK_THROWS_AS(quad::integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, opts),
                  ConvergenceError);
  opts.throw_on_failure = false;
  const auto r = quad::integrate_adaptive([](double x) { return 1.0 / x; }, 0.0, 1.0, opts);
  CHECK(r.abs_error_estimate > opts.rel_tol * std::abs(r.value));
}

TEST_CASE("talbot inversion of elementary transforms") {
  CHECK(quad::talbot_invert([](cplx s) { return 1.0 / s; }, 5.0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(quad::talbot_invert([](cplx s) { return 1.0 / (s * s); }, 3.0) == doctest::Approx(3.0).epsilon(1e-10));
  const double v = quad::talbot_invert([](cplx s) { return 2.0 / std::pow(s, 1.5); }, 1.0);
  CHECK(v == doctest::Approx(2.2567583342).epsilon(1e-10));
  CHECK(oracle::rel_err(v, 2.0 / std::tgamma(1.5)) < 1e-10);
}

TEST_CASE("talbot inversion of fractional powers") {
  for (double a : {0.25, 0.5, 0.9}) {
    for (double t : {0.1, 1.0, 100.0}) {
      CAPTURE(a);
      CAPTURE(t);
      const double v = quad::talbot_invert([a](cplx s) { return std::pow(s, -(a + 1.0)); }, t);
      CHECK(oracle::rel_err(v, std::pow(t, a) / std::tgamma(a + 1.0)) < 1e-9);
    }
  }
}

TEST_CASE("checked talbot inversion rejects a pole outside the contour") {
  CHECK_THROWS_AS(quad::talbot_invert_checked([](cplx s) { return 1.0 / (s - 20.0); }, 1.0, 32, 48, 1e-8),
                  InversionError);
  const double e = quad::talbot_invert_checked([](cplx s) { return 1.0 / (s + 1.0); }, 2.0, 32, 48, 1e-8);
  CHECK(oracle::rel_err(e, std::exp(-2.0)) < 1e-9);
}

namespace {

std::vector<double> partial_sums(int n, double (*term)(int)) {
  std::vector<double> out;
  double s = 0.0;
  for (int k = 0; k < n; ++k) out.push_back(s += term(k));
  return out;
}

}  // namespace

TEST_CASE("alternating extrapolation of classical series") {
  const auto log2 = partial_sums(40, [](int k) { return (k % 2 ? -1.0 : 1.0) / (k + 1); });
  const auto l = quad::alternating_extrapolate(log2);
  CHECK(l.value == doctest::Approx(0.6931471806).epsilon(1e-10));
  CHECK(std::abs(l.value - std::log(2.0)) <= 10.0 * l.error_estimate);
  const auto leibniz = partial_sums(40, [](int k) { return (k % 2 ? -1.0 : 1.0) / (2 * k + 1); });
  const auto r = quad::alternating_extrapolate(leibniz);
  CHECK(r.value == doctest::Approx(0.7853981634).epsilon(1e-10));
  CHECK(std::abs(r.value - oracle::kPi / 4) < 1e-10);
  CHECK(std::abs(r.value - oracle::kPi / 4) <= 10.0 * r.error_estimate);
}

TEST_CASE("alternating extrapolation edge cases") {
  const std::vector<double> constant(8, 0.75);
  CHECK(quad::alternating_extrapolate(constant).value == 0.75);
  const std::vector<double> short_input{1.0, 0.5, 0.75};
  CHECK_THROWS_AS(quad::alternating_extrapolate(short_input), DomainError);
  const auto monotone = partial_sums(20, [](int k) { return 1.0 / ((k + 1.0) * (k + 1.0)); });
  CHECK_THROWS_AS(quad::alternating_extrapolate(monotone), DomainError);
}
