#include <doctest.h>

#include <cmath>

#include "fracdiff/error.hpp"
#include "fracdiff/mellin.hpp"
#include "fracdiff/specfun.hpp"
#include "oracles.hpp"

using namespace fracdiff;
using oracle::grid;

TEST_CASE("reduced Green function examples") {
  CHECK(std::abs(mellin::mb_reduced_green(0.5, 1.0) - 0.5 * mwright(0.25, 1.0)) < 1e-6);
  const double gauss = std::exp(-0.25) / (2.0 * std::sqrt(oracle::kPi));
  CHECK(gauss == doctest::Approx(0.2196956447).epsilon(1e-10));
  CHECK(std::abs(mellin::mb_reduced_green(1.0, 1.0) - gauss) < 1e-10);
  CHECK(std::abs(mellin::mb_reduced_green(0.999, 1.0) - gauss) < 1e-3);
}

TEST_CASE("reduced Green function matches the series on [0.3, 3]") {
  for (double beta : {0.25, 0.5, 0.75, 0.9}) {
    for (double x : grid(0.3, 3.0, 0.1)) {
      CAPTURE(beta);
      CAPTURE(x);
      const auto r = mellin::mb_reduced_green_detail(beta, x);
      CHECK(std::abs(r.value - 0.5 * mwright(0.5 * beta, x)) < 1e-6);
      CHECK(std::abs(r.imag_residue) <= 1e-10);
      CHECK(r.endpoint_ratio <= 1e-14);
    }
  }
}

TEST_CASE("kernel examples") {
  CHECK(std::abs(mellin::mb_F_kernel(0.5, 1.0) - fox_wright_F(0.5, 1.0)) < 1e-6);
  // Leading behaviour y sin(pi/4); the next term -y^2 shifts the ratio by
  // y / sin(pi/4), about 1.4% at y = 0.01.
  const double lead = std::sin(oracle::kPi / 4.0);
  for (double y : {0.01, 0.003, 0.001}) {
    CAPTURE(y);
    const double ratio = mellin::mb_F_kernel(0.5, y) / (y * lead);
    CHECK(std::abs(ratio - 1.0 + y / lead) < y * y);
  }
  CHECK(std::abs(mellin::mb_F_kernel(0.5, 0.005) / (0.005 * lead) - 1.0) < 0.01);
  CHECK(std::abs(mellin::mb_F_kernel_detail(0.5, 2.0).imag_residue) <= 1e-10);
}

TEST_CASE("kernel matches the series on [0.3, 3]") {
  for (double gamma : {0.2, 0.5, 0.8}) {
    for (double y : grid(0.3, 3.0, 0.1)) {
      CAPTURE(gamma);
      CAPTURE(y);
      const auto r = mellin::mb_F_kernel_detail(gamma, y);
      CHECK(std::abs(r.value - fox_wright_F(gamma, y)) < 1e-6);
      CHECK(std::abs(r.imag_residue) <= 1e-10);
    }
  }
}

TEST_CASE("doubling the nodes at fixed span changes nothing") {
  for (double x : {0.5, 2.0}) {
    mellin::ContourSpec coarse;
    coarse.half_span = mellin::mb_reduced_green_detail(0.6, x).half_span;
    mellin::ContourSpec fine = coarse;
    fine.nodes = 2 * coarse.nodes;
    CHECK(std::abs(mellin::mb_reduced_green(0.6, x, coarse) - mellin::mb_reduced_green(0.6, x, fine)) < 1e-12);
    CHECK(std::abs(mellin::mb_F_kernel(0.4, x, coarse) - mellin::mb_F_kernel(0.4, x, fine)) < 1e-12);
  }
}

TEST_CASE("contour abscissa can move between 0.25 and 0.75") {
  for (double sigma : {0.25, 0.4, 0.6, 0.75}) {
    mellin::ContourSpec c;
    c.sigma = sigma;
    CAPTURE(sigma);
    CHECK(std::abs(mellin::mb_reduced_green(0.5, 1.3, c) - mellin::mb_reduced_green(0.5, 1.3)) < 1e-8);
    CHECK(std::abs(mellin::mb_F_kernel(0.5, 1.3, c) - mellin::mb_F_kernel(0.5, 1.3)) < 1e-8);
  }
}

TEST_CASE("contour validation and truncation") {
  mellin::ContourSpec c;
  c.sigma = 0.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.sigma = 1.0;
  CHECK_THROWS_AS(c.validate(), DomainError);
  c.sigma = 0.5;
  c.nodes = 32;
  CHECK_THROWS_AS(c.validate(), DomainError);
  mellin::ContourSpec narrow;
  narrow.half_span = 2.0;
  CHECK_THROWS_AS(mellin::mb_reduced_green(0.5, 1.0, narrow), TruncationError);
  CHECK_THROWS_AS(mellin::mb_reduced_green(0.5, 0.0), DomainError);
  CHECK_THROWS_AS(mellin::mb_F_kernel(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(mellin::mb_F_kernel(0.5, -1.0), DomainError);
}
