#include "jsqd/choice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace jsqd {

namespace {

constexpr std::size_t kReportGrid = 1001;

double clamp_unit(double x) {
  if (!(x >= -kInputTolerance && x <= 1.0 + kInputTolerance)) {
    throw std::domain_error("choice: x = " + std::to_string(x) + " outside [0,1]");
  }
  return std::clamp(x, 0.0, 1.0);
}

// Factor i of the product; sign carries the ^+ truncation.
inline double factor(double x, std::int64_t i, double n) {
  const double shift = static_cast<double>(i) / n;
  return (x - shift) / (1.0 - shift);
}

// Shared core on an arbitrary real argument. Returns log(beta) when
// want_log is set, otherwise beta itself.
double beta_core(std::int64_t n_int, std::int64_t d, double x, bool want_log) {
  const double n = static_cast<double>(n_int);
  const double zero = want_log ? -std::numeric_limits<double>::infinity() : 0.0;
  if (x <= 0.0) return zero;
  if (d <= kLogSpaceThreshold && !want_log) {
    double prod = 1.0;
    for (std::int64_t i = 0; i < d; ++i) {
      const double f = factor(x, i, n);
      if (f <= 0.0) return 0.0;
      prod *= f;
    }
    return prod;
  }
  double sum = 0.0;
  for (std::int64_t i = 0; i < d; ++i) {
    const double f = factor(x, i, n);
    if (f <= 0.0) return zero;
    sum += std::log(f);
  }
  return want_log ? sum : std::exp(sum);
}

double beta_prime_core(std::int64_t n_int, std::int64_t d, double x) {
  const double n = static_cast<double>(n_int);
  if (x <= static_cast<double>(d - 1) / n) return 0.0;
  // Every factor is positive here, so the product rule collapses to
  // beta(x) * sum_j 1/(x - j/n).
  double inv_sum = 0.0;
  for (std::int64_t j = 0; j < d; ++j) inv_sum += 1.0 / (x - static_cast<double>(j) / n);
  if (d <= kLogSpaceThreshold) return beta_core(n_int, d, x, false) * inv_sum;
  return std::exp(beta_core(n_int, d, x, true) + std::log(inv_sum));
}

}  // namespace

void SystemParams::validate() const {
  if (n < 1) throw std::invalid_argument("SystemParams: n must be >= 1");
  if (d < 1 || d > n) throw std::invalid_argument("SystemParams: need 1 <= d <= n");
  if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
    throw std::invalid_argument("SystemParams: lambda must be finite and >= 0");
  }
}

double SystemParams::sqrt_n() const { return std::sqrt(static_cast<double>(n)); }

double beta(const SystemParams& params, double x) {
  return beta_core(params.n, params.d, clamp_unit(x), false);
}

double log_beta(const SystemParams& params, double x) {
  return beta_core(params.n, params.d, clamp_unit(x), true);
}

double beta_prime(const SystemParams& params, double x) {
  return beta_prime_core(params.n, params.d, clamp_unit(x));
}

double gamma(const SystemParams& params, double x) {
  x = clamp_unit(x);
  if (x == 0.0) return 0.0;
  if (params.d <= kLogSpaceThreshold) return std::pow(x, static_cast<double>(params.d));
  return std::exp(static_cast<double>(params.d) * std::log(x));
}

double beta_extended(const SystemParams& params, double x) {
  return beta_core(params.n, params.d, x, false);
}

double beta_prime_extended(const SystemParams& params, double x) {
  if (x <= 0.0) return 0.0;
  return beta_prime_core(params.n, params.d, x);
}

ChoiceEval evaluate_choice(const SystemParams& params, double x) {
  return {clamp_unit(x), beta(params, x), beta_prime(params, x), gamma(params, x)};
}

LatticeChoiceTable::LatticeChoiceTable(std::int64_t n, std::int64_t d)
    : n_(n), d_(d), values_(static_cast<std::size_t>(n) + 1, 0.0) {
  if (n < 1 || d < 1 || d > n) throw std::invalid_argument("LatticeChoiceTable: need 1 <= d <= n");
  values_[static_cast<std::size_t>(n)] = 1.0;
  for (std::int64_t m = n; m > d; --m) {
    values_[static_cast<std::size_t>(m - 1)] =
        values_[static_cast<std::size_t>(m)] * static_cast<double>(m - d) / static_cast<double>(m);
  }
}

AsymptoticReport asymptotic_report(const SystemParams& params, double epsilon) {
  params.validate();
  if (!(epsilon > 0.0 && epsilon < 1.0)) {
    throw std::invalid_argument("asymptotic_report: epsilon must lie in (0,1)");
  }
  const double d = static_cast<double>(params.d);
  const double n = static_cast<double>(params.n);

  AsymptoticReport rep;
  rep.epsilon = epsilon;
  rep.grid_points = kReportGrid;
  for (std::size_t j = 0; j < kReportGrid; ++j) {
    const double x =
        j + 1 == kReportGrid ? 1.0 : epsilon + (1.0 - epsilon) * static_cast<double>(j) / (kReportGrid - 1);
    const double b = beta(params, x);
    const double g = gamma(params, x);
    const double bp = beta_prime(params, x);
    const double gp = d * std::pow(x, d - 1.0);
    rep.sup_ratio_error = std::max(rep.sup_ratio_error, std::abs(b / g - 1.0));
    rep.sup_prime_ratio_error = std::max(rep.sup_prime_ratio_error, std::abs(bp / gp - 1.0));
    const double log_gap = std::abs(log_beta(params, x) - d * std::log(x));
    rep.sup_log_error = std::max(rep.sup_log_error, log_gap);
  }

  rep.zero_window_end = 1.0 - 2.0 * std::log(d) / d;
  for (std::size_t j = 0; j < kReportGrid && rep.zero_window_end >= 0.0; ++j) {
    const double x = rep.zero_window_end * static_cast<double>(j) / (kReportGrid - 1);
    rep.sup_beta_low = std::max(rep.sup_beta_low, beta(params, x));
    rep.sup_beta_prime_low = std::max(rep.sup_beta_prime_low, beta_prime(params, x));
  }

  rep.d2_over_n = d * d / n;
  rep.log_bound_constant = 1.0 / epsilon;
  rep.log_bound = rep.log_bound_constant * rep.d2_over_n;
  rep.bound_applicable = d <= 0.5 * n * epsilon;
  return rep;
}

}  // namespace jsqd
