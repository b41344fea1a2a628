#include "fracdiff_tools/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <exception>
#include <sstream>

#include "fracdiff/distributed_order.hpp"
#include "fracdiff/quad.hpp"
#include "fracdiff/single_order.hpp"
#include "fracdiff/specfun.hpp"

namespace fracdiff::selftest {

namespace {

namespace dist = distributed_order;

constexpr double kPi = 3.14159265358979323846;

std::vector<double> grid(double start, double stop, double step) {
  std::vector<double> out;
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  for (int i = 0; i < n; ++i) out.push_back(start + i * step);
  return out;
}

double rel_err(double value, double reference) {
  return std::abs(value - reference) / std::abs(reference);
}

CheckResult verdict(std::string name, double measured, double tolerance, std::string detail) {
  return {std::move(name), measured <= tolerance, measured, tolerance, std::move(detail)};
}

// Integral over the whole line of an even function, split at x = 12.
double integrate_even(const std::function<double(double)>& f, double rel_tol) {
  quad::QuadOptions opts;
  opts.rel_tol = rel_tol;
  opts.abs_tol = 1e-13;
  const double core = quad::integrate_adaptive(f, 0.0, 12.0, opts).value;
  const double tail = quad::integrate_to_infinity(f, 12.0, opts, 4.0).value;
  return 2.0 * (core + tail);
}

CheckResult gaussian_limit() {
  const FractionalOrder one(1.0);
  double worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    for (double x : grid(-5.0, 5.0, 0.25)) {
      const double gauss = std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
      worst = std::max(worst, rel_err(single_order::green(one, x, t), gauss));
    }
  }
  return verdict("gaussian_limit", worst, 1e-10, "beta=1 vs heat kernel, x in [-5,5], t in {0.5,1,2}");
}

CheckResult mfunction_identity() {
  double worst_half = 0.0;
  for (double x : grid(0.0, 10.0, 0.125)) {
    worst_half = std::max(worst_half, rel_err(mwright(0.5, x), std::exp(-x * x / 4.0) / std::sqrt(kPi)));
  }
  double worst_third = 0.0;
  const double cbrt3 = std::cbrt(3.0);
  for (double x : grid(0.0, 4.0, 0.125)) {
    worst_third = std::max(worst_third, rel_err(mwright(1.0 / 3.0, x), cbrt3 * cbrt3 * airy_ai_maclaurin(x / cbrt3)));
  }
  // Two tolerances; report the worse of the two normalized errors.
  const double score = std::max(worst_half / 1e-10, worst_third / 1e-8);
  char detail[160];
  std::snprintf(detail, sizeof detail, "nu=1/2 err %.3e (tol 1e-10), nu=1/3 vs Airy err %.3e (tol 1e-8)",
                worst_half, worst_third);
  return verdict("mfunction_identity", score, 1.0, detail);
}

CheckResult mittag_leffler_closed_form() {
  const MittagLefflerOrder half(0.5);
  double worst = 0.0;
  for (double t : grid(0.0, 20.0, 0.125)) {
    const double reference = std::exp(t) * std::erfc(std::sqrt(t));
    worst = std::max(worst, rel_err(mittag_leffler_neg(half, std::sqrt(t)), reference));
  }
  return verdict("mittag_leffler_closed_form", worst, 1e-8, "E_1/2(-sqrt t) vs e^t erfc(sqrt t), t in [0,20]");
}

CheckResult moments() {
  double worst = 0.0;
  for (double beta : {0.25, 0.5, 0.75}) {
    const FractionalOrder order(beta);
    for (int n : {1, 2}) {
      for (double t : {0.5, 1.0, 2.0}) {
        quad::QuadOptions opts;
        opts.rel_tol = 1e-11;
        auto f = [&](double x) { return std::pow(x, 2 * n) * single_order::green(order, x, t); };
        const double value = 2.0 * (quad::integrate_adaptive(f, 0.0, 4.0, opts).value +
                                    quad::integrate_to_infinity(f, 4.0, opts, 4.0).value);
        const double exact = std::tgamma(2.0 * n + 1.0) / std::tgamma(beta * n + 1.0) * std::pow(t, beta * n);
        worst = std::max(worst, rel_err(value, exact));
      }
    }
  }
  return verdict("moments", worst, 1e-5, "quadrature mu_2n vs Gamma(2n+1)/Gamma(beta n+1) t^(beta n)");
}

CheckResult path_agreement() {
  double worst = 0.0;
  for (double beta : {0.5, 0.75}) {
    const FractionalOrder order(beta);
    for (double x : {0.5, 1.0, 2.0, 3.0}) {
      const double s = single_order::green(order, x, 1.0);
      const double f = single_order::fourier_oracle_green(order, x, 1.0);
      const double m = single_order::mellin_oracle_green(order, x, 1.0);
      worst = std::max({worst, std::abs(s - f), std::abs(s - m), std::abs(f - m)});
    }
  }
  return verdict("path_agreement", worst, 1e-6, "series / Fourier-cosine / Mellin-Barnes, pairwise abs diff");
}

CheckResult distributed_reduction() {
  double worst = 0.0;
  for (double nu : {0.25, 0.5, 0.75}) {
    const FractionalOrder order(nu);
    const auto weight = dist::OrderWeight::single(nu);
    for (double t : {0.5, 1.0, 2.0}) {
      for (double x : grid(0.0, 4.0, 0.25)) {
        worst = std::max(worst, std::abs(dist::green(weight, x, t) - single_order::green(order, x, t)));
      }
    }
  }
  return verdict("distributed_reduction", worst, 1e-6, "single-atom weight vs single-order green, abs diff");
}

CheckResult distributed_series_vs_integral() {
  const dist::OrderWeight two({{0.25, 0.5}, {0.75, 0.5}});
  double worst = 0.0;
  for (double x : grid(-1.5, 1.5, 0.125)) {
    worst = std::max(worst, std::abs(dist::green_series(two, x, 1.0) - dist::green(two, x, 1.0)));
  }
  return verdict("distributed_series_vs_integral", worst, 1e-5, "two-atom weight, |x| <= 1.5, t = 1");
}

CheckResult power_law_asymptotics() {
  const dist::OrderWeight two({{0.25, 0.5}, {0.75, 0.5}});
  auto law = [](double beta, double b, double t) { return 2.0 * std::pow(t, beta) / (b * std::tgamma(beta + 1.0)); };
  const double late = std::abs(dist::second_moment(two, 1e6) / law(0.25, 0.5, 1e6) - 1.0);
  const double early = std::abs(dist::second_moment(two, 1e-6) / law(0.75, 0.5, 1e-6) - 1.0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "t=1e6 dev %.3e, t=1e-6 dev %.3e", late, early);
  return verdict("power_law_asymptotics", std::max(late, early), 0.05, detail);
}

CheckResult log_asymptotics() {
  const auto uniform = dist::OrderWeight::uniform();
  const double late = std::abs(dist::second_moment(uniform, 1e8) / (2.0 * std::log(1e8)) - 1.0);
  const double early = std::abs(dist::second_moment(uniform, 1e-8) / (2.0 * 1e-8 * std::log(1e8)) - 1.0);
  char detail[128];
  std::snprintf(detail, sizeof detail, "t=1e8 dev %.3e, t=1e-8 dev %.3e", late, early);
  return verdict("log_asymptotics", std::max(late, early), 0.10, detail);
}

std::vector<dist::OrderWeight> weight_battery() {
  return {
      dist::OrderWeight::single(0.5),
      dist::OrderWeight({{0.25, 0.5}, {0.75, 0.5}}),
      dist::OrderWeight::uniform(),
      dist::OrderWeight({{0.5, 0.5}}, 0.5),
      dist::OrderWeight({{0.3, 0.2}, {0.6, 0.3}, {1.0, 0.5}}),
  };
}

CheckResult normalization_positivity() {
  double worst_mass = 0.0;
  double min_value = 0.0;
  for (const auto& weight : weight_battery()) {
    for (double t : {0.5, 1.0, 2.0}) {
      auto u = [&](double x) { return dist::green(weight, x, t); };
      worst_mass = std::max(worst_mass, std::abs(integrate_even(u, 1e-9) - 1.0));
      for (double x : grid(0.0, 20.0, 0.25)) min_value = std::min(min_value, u(x));
    }
  }
  const double score = std::max(worst_mass / 1e-5, -min_value / 1e-9);
  char detail[160];
  std::snprintf(detail, sizeof detail, "mass err %.3e (tol 1e-5), min u %.3e (tol -1e-9), %zu weights",
                worst_mass, min_value, weight_battery().size());
  return verdict("normalization_positivity", score, 1.0, detail);
}

// Evaluating the same points twice, before and after caches are warm, must
// give bit-identical doubles.
CheckResult repeatability() {
  auto sample = [] {
    std::vector<double> v;
    const FractionalOrder order(0.6);
    const dist::OrderWeight mix({{0.5, 0.5}}, 0.5);
    for (double x : {0.0, 0.7, 3.1, 9.5, 17.0}) {
      v.push_back(single_order::green(order, x, 1.3));
      v.push_back(dist::green(mix, x, 0.8));
    }
    v.push_back(dist::second_moment(mix, 2.5));
    return v;
  };
  const auto first = sample();
  const auto second = sample();
  int mismatches = 0;
  for (std::size_t i = 0; i < first.size(); ++i) {
    if (std::memcmp(&first[i], &second[i], sizeof(double)) != 0) ++mismatches;
  }
  return verdict("repeatability", mismatches, 0.0, "repeated evaluations are bit-identical");
}

}  // namespace

double airy_ai_maclaurin(double z) {
  const long double c1 = 0.355028053887817239260L;  // Ai(0)
  const long double c2 = 0.258819403792806798405L;  // -Ai'(0)
  const long double z3 = static_cast<long double>(z) * z * z;
  long double f_term = 1.0L, f = 1.0L;
  long double g_term = z, g = z;
  for (int k = 0; k < 200; ++k) {
    f_term *= z3 / ((3.0L * k + 2) * (3.0L * k + 3));
    g_term *= z3 / ((3.0L * k + 3) * (3.0L * k + 4));
    f += f_term;
    g += g_term;
    if (std::abs(f_term) < 1e-22L * std::abs(f) && std::abs(g_term) < 1e-22L * std::abs(g)) break;
  }
  return static_cast<double>(c1 * f - c2 * g);
}

const std::vector<Check>& checks() {
  static const std::vector<Check> list = {
      {"gaussian_limit", gaussian_limit},
      {"mfunction_identity", mfunction_identity},
      {"mittag_leffler_closed_form", mittag_leffler_closed_form},
      {"moments", moments},
      {"path_agreement", path_agreement},
      {"distributed_reduction", distributed_reduction},
      {"distributed_series_vs_integral", distributed_series_vs_integral},
      {"power_law_asymptotics", power_law_asymptotics},
      {"log_asymptotics", log_asymptotics},
      {"normalization_positivity", normalization_positivity},
      {"repeatability", repeatability},
  };
  return list;
}

CheckResult run_one(const Check& check) {
  try {
    return check.run();
  } catch (const std::exception& e) {
    return {check.name, false, 0.0, 0.0, std::string("exception: ") + e.what()};
  }
}

std::vector<CheckResult> run_all() {
  std::vector<CheckResult> out;
  for (const auto& check : checks()) out.push_back(run_one(check));
  return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.passed; });
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::ostringstream out;
  int passed = 0;
  for (const auto& r : results) {
    char line[512];
    std::snprintf(line, sizeof line, "%-4s  %-32s measured=%.3e  tol=%.1e  %s\n", r.passed ? "PASS" : "FAIL",
                  r.name.c_str(), r.measured, r.tolerance, r.detail.c_str());
    out << line;
    passed += r.passed ? 1 : 0;
  }
  out << passed << "/" << results.size() << " checks passed\n";
  return out.str();
}

}  // namespace fracdiff::selftest
