#include "fracdiff/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fracdiff/error.hpp"

namespace fracdiff::quad {

namespace {

// Kronrod abscissae on [-1, 1] (positive half); odd indices are the Gauss
// nodes. Values from QUADPACK qk15.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double kEps = std::numeric_limits<double>::epsilon();

double checked(const RealFunction& f, double x) {
  const double y = f(x);
  if (!std::isfinite(y)) {
    std::ostringstream msg;
    msg << "non-finite integrand value at x = " << x;
    throw ConvergenceError(msg.str());
  }
  return y;
}

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

struct ByError {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    return lhs.error < rhs.error;
  }
};

}  // namespace

QuadResult gauss_kronrod15(const RealFunction& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double abs_half = std::abs(half);

  const double fc = checked(f, center);
  double result_gauss = fc * kWg[3];
  double result_kronrod = fc * kWgk[7];
  double result_abs = std::abs(result_kronrod);
  std::array<double, 7> f1{};
  std::array<double, 7> f2{};

  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    f1[j] = checked(f, center - dx);
    f2[j] = checked(f, center + dx);
    const double sum = f1[j] + f2[j];
    result_kronrod += kWgk[j] * sum;
    result_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
    if (j % 2 == 1) result_gauss += kWg[j / 2] * sum;
  }

  const double mean = 0.5 * result_kronrod;
  double result_asc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    result_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
  }

  QuadResult out;
  out.value = result_kronrod * half;
  result_abs *= abs_half;
  result_asc *= abs_half;
  double err = std::abs((result_kronrod - result_gauss) * half);
  if (result_asc != 0.0 && err != 0.0) {
    err = result_asc * std::min(1.0, std::pow(200.0 * err / result_asc, 1.5));
  }
  if (result_abs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    err = std::max(50.0 * kEps * result_abs, err);
  }
  out.abs_error_estimate = err;
  out.evaluations = 15;
  return out;
}

QuadResult integrate_adaptive(const RealFunction& f, double a, double b,
                              const QuadOptions& options) {
  if (!(a < b)) {
    if (a == b) return {};
    throw DomainError("integrate_adaptive: require a < b");
  }
  if (!(options.rel_tol > 0.0) && !(options.abs_tol > 0.0)) {
    throw DomainError("integrate_adaptive: need a positive tolerance");
  }

  std::priority_queue<Panel, std::vector<Panel>, ByError> active;
  double frozen_value = 0.0;  // panels too narrow to bisect further
  double frozen_error = 0.0;

  QuadResult first = gauss_kronrod15(f, a, b);
  int evaluations = first.evaluations;
  active.push({a, b, first.value, first.abs_error_estimate});
  double total = first.value;
  double error = first.abs_error_estimate;

  int subdivisions = 1;
  auto target = [&] { return std::max(options.abs_tol, options.rel_tol * std::abs(total)); };

  while (error > target() && !active.empty()) {
    if (subdivisions >= options.max_subdivisions) break;
    Panel worst = active.top();
    active.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double width = worst.b - worst.a;
    if (width <= 100.0 * kEps * std::max(std::abs(worst.a), std::abs(worst.b)) ||
        mid <= worst.a || mid >= worst.b) {
      frozen_value += worst.value;
      frozen_error += worst.error;
      continue;
    }
    const QuadResult left = gauss_kronrod15(f, worst.a, mid);
    const QuadResult right = gauss_kronrod15(f, mid, worst.b);
    evaluations += left.evaluations + right.evaluations;
    ++subdivisions;
    active.push({worst.a, mid, left.value, left.abs_error_estimate});
    active.push({mid, worst.b, right.value, right.abs_error_estimate});

    // Resum from scratch now and then to keep drift out of the totals.
    total += left.value + right.value - worst.value;
    error += left.abs_error_estimate + right.abs_error_estimate - worst.error;
    if (subdivisions % 64 == 0) {
      auto copy = active;
      total = frozen_value;
      error = frozen_error;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }

  {
    auto copy = active;
    total = frozen_value;
    error = frozen_error;
    while (!copy.empty()) {
      total += copy.top().value;
      error += copy.top().error;
      copy.pop();
    }
  }

  QuadResult out{total, error, evaluations};
  if (error > target() && options.throw_on_failure) {
    std::ostringstream msg;
    msg << "integrate_adaptive: tolerance not met on [" << a << ", " << b
        << "] after " << subdivisions << " subdivisions (value " << total
        << ", error estimate " << error << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

QuadResult integrate_adaptive(const RealFunction& f, double a, double b,
                              double rel_tol) {
  QuadOptions options;
  options.rel_tol = rel_tol;
  return integrate_adaptive(f, a, b, options);
}

QuadResult integrate_to_infinity(const RealFunction& f, double a,
                                 const QuadOptions& options, double scale) {
  if (!(scale > 0.0)) throw DomainError("integrate_to_infinity: scale must be positive");
  auto mapped = [&](double w) {
    if (w >= 1.0) return 0.0;
    const double one_minus = 1.0 - w;
    const double x = a + scale * w / one_minus;
    if (!std::isfinite(x)) return 0.0;
    const double jac = scale / (one_minus * one_minus);
    const double y = f(x);
    return y == 0.0 ? 0.0 : y * jac;
  };
  return integrate_adaptive(mapped, 0.0, 1.0, options);
}

Extrapolation alternating_extrapolate(std::span<const double> partial_sums) {
  const std::size_t n = partial_sums.size();
  if (n < 4) throw DomainError("alternating_extrapolate: need at least four partial sums");

  double scale = 0.0;
  for (double s : partial_sums) {
    if (!std::isfinite(s)) throw DomainError("alternating_extrapolate: non-finite partial sum");
    scale = std::max(scale, std::abs(s));
  }

  // The second half of the increments must alternate in sign; increments at
  // rounding level are treated as zero.
  const double floor = 64.0 * kEps * scale;
  int last_sign = 0;
  for (std::size_t i = n / 2; i + 1 < n; ++i) {
    const double d = partial_sums[i + 1] - partial_sums[i];
    if (std::abs(d) <= floor) continue;
    const int sign = d > 0.0 ? 1 : -1;
    if (last_sign != 0 && sign == last_sign) {
      throw DomainError("alternating_extrapolate: sequence is not alternating");
    }
    last_sign = sign;
  }

  std::vector<double> level(partial_sums.begin(), partial_sums.end());
  double spread = 0.0;
  while (level.size() > 1) {
    if (level.size() == 2) spread = std::abs(level[1] - level[0]);
    for (std::size_t i = 0; i + 1 < level.size(); ++i) {
      level[i] = 0.5 * (level[i] + level[i + 1]);
    }
    level.pop_back();
  }
  return {level.front(), std::max(spread, floor)};
}

double talbot_invert(const LaplaceTransform& F, double t, int nodes) {
  if (!(t > 0.0)) throw DomainError("talbot_invert: t must be positive");
  if (nodes < 4) throw DomainError("talbot_invert: need at least four nodes");

  // Contour points and exponentials in long double: Re(ts) reaches 2N/5, so
  // rounding in the exponent dominates the error budget otherwise.
  using ld = long double;
  using cld = std::complex<ld>;
  const ld pi = 3.141592653589793238462643383279502884L;
  const ld m = nodes;
  const ld tt = t;
  const ld r = 2.0L * m / (5.0L * tt);
  ld sum = 0.5L * static_cast<ld>(std::real(F(std::complex<double>(static_cast<double>(r), 0.0)))) *
           std::exp(r * tt);
  for (int k = 1; k < nodes; ++k) {
    const ld theta = k * pi / m;
    const ld cot = 1.0L / std::tan(theta);
    const cld s(r * theta * cot, r * theta);
    const ld sigma = theta + (theta * cot - 1.0L) * cot;
    const std::complex<double> f = F(std::complex<double>(static_cast<double>(s.real()),
                                                          static_cast<double>(s.imag())));
    const cld term = std::exp(tt * s) * cld(f.real(), f.imag()) * cld(1.0L, sigma);
    sum += term.real();
  }
  const double value = static_cast<double>(r / m * sum);
  if (!std::isfinite(value)) throw InversionError("talbot_invert: non-finite result");
  return value;
}

double talbot_invert_checked(const LaplaceTransform& F, double t, int nodes,
                             int check_nodes, double rel_tol) {
  const double primary = talbot_invert(F, t, nodes);
  const double check = talbot_invert(F, t, check_nodes);
  const double diff = std::abs(primary - check);
  if (diff > rel_tol * std::abs(primary)) {
    std::ostringstream msg;
    msg << "talbot_invert: " << nodes << "-node and " << check_nodes
        << "-node inversions disagree at t = " << t << " (" << primary << " vs "
        << check << ")";
    throw InversionError(msg.str());
  }
  return primary;
}

}  // namespace fracdiff::quad
