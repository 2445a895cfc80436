#include "jsqd/fixed_point.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace jsqd {

namespace {

constexpr std::size_t kMaxMuLength = 10'000'000;

void check_occupancy(std::span<const double> x) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0)) throw std::invalid_argument("drift: occupancy values must lie in [0,1]");
    if (i > 0 && x[i] > x[i - 1]) throw std::invalid_argument("drift: occupancy must be nonincreasing");
  }
}

}  // namespace

NearFixedPoint mu_sequence(const SystemParams& params, double floor) {
  params.validate();
  if (!(params.lambda > 0.0 && params.lambda < 1.0)) {
    throw std::invalid_argument("mu_sequence: requires 0 < lambda < 1");
  }
  if (!(floor > 0.0 && floor <= 1e-6)) throw std::invalid_argument("mu_sequence: floor must lie in (0, 1e-6]");

  NearFixedPoint out;
  out.params = params;
  out.floor = floor;
  double current = params.lambda;
  out.mu.push_back(current);
  for (;;) {
    const double next = params.lambda * beta(params, current);
    if (next < floor) {
      out.tail = next;
      break;
    }
    if (out.mu.size() >= kMaxMuLength) throw std::runtime_error("mu_sequence: sequence did not reach floor");
    out.mu.push_back(next);
    current = next;
  }
  return out;
}

std::vector<double> drift_inflow(const SystemParams& params, std::span<const double> x) {
  std::vector<double> a(x.size() + 1);
  double prev = beta_extended(params, 1.0);
  for (std::size_t i = 0; i <= x.size(); ++i) {
    const double cur = i < x.size() ? beta_extended(params, x[i]) : 0.0;
    a[i] = params.lambda * (prev - cur);
    prev = cur;
  }
  return a;
}

std::vector<double> drift_outflow(std::span<const double> x) {
  std::vector<double> b(x.size() + 1, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) b[i] = x[i] - (i + 1 < x.size() ? x[i + 1] : 0.0);
  return b;
}

DriftResidual drift_residual(const SystemParams& params, std::span<const double> x) {
  params.validate();
  check_occupancy(x);
  const auto a = drift_inflow(params, x);
  const auto b = drift_outflow(x);
  DriftResidual out;
  out.residual.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.residual[i] = a[i] - b[i];
    out.l1 += std::abs(out.residual[i]);
  }
  return out;
}

double t_drift(const NearFixedPoint& mu, std::size_t i, double z) {
  if (i == 0) return 0.0;
  const SystemParams& p = mu.params;
  const double root_n = p.sqrt_n();
  const double centre = mu(i);
  return p.lambda * root_n * (beta_extended(p, centre + z / root_n) - beta_extended(p, centre));
}

double t_drift_exponential(const SystemParams& params, double alpha, double z) {
  const double scale = static_cast<double>(params.d) / params.sqrt_n();
  return (std::exp(scale * (z - alpha)) - std::exp(-scale * alpha)) / scale;
}

double alpha_n(const SystemParams& params) {
  const double root_n = params.sqrt_n();
  const double d = static_cast<double>(params.d);
  return root_n * (1.0 - params.lambda) - root_n * std::log(d) / d;
}

std::vector<double> fluid_fixed_point(std::size_t k, double gamma_coeff) {
  if (!(gamma_coeff >= 0.0 && gamma_coeff < 1.0)) throw std::invalid_argument("fluid_fixed_point: gamma in [0,1)");
  std::vector<double> f(k, 1.0);
  if (gamma_coeff > 0.0) f.push_back(gamma_coeff);
  return f;
}

std::size_t min_queue_length(std::span<const double> x, double tolerance) {
  std::size_t m = 0;
  while (m < x.size() && x[m] >= 1.0 - tolerance) ++m;
  return m;
}

const char* to_string(RegimeKind kind) {
  switch (kind) {
    case RegimeKind::Sub: return "sub";
    case RegimeKind::Critical: return "critical";
    case RegimeKind::Super: return "super";
    case RegimeKind::Ambiguous: return "ambiguous";
  }
  return "ambiguous";
}

RegimeKind parse_regime(const std::string& text) {
  if (text == "sub") return RegimeKind::Sub;
  if (text == "critical") return RegimeKind::Critical;
  if (text == "super") return RegimeKind::Super;
  if (text == "ambiguous") return RegimeKind::Ambiguous;
  throw std::invalid_argument("unknown regime '" + text + "' (expected sub|critical|super)");
}

LimitRegime classify_regime(const SystemParams& params, const ClassifierConfig& config) {
  params.validate();
  LimitRegime out;
  out.params = params;
  auto& diag = out.diagnostics;
  const double root_n = params.sqrt_n();
  diag.d_over_sqrt_n = static_cast<double>(params.d) / root_n;
  diag.sqrt_n_gap = root_n * (1.0 - params.lambda);
  diag.alpha_n = alpha_n(params);

  const NearFixedPoint mu = mu_sequence(params, config.mu_floor);
  for (std::size_t i = 1; i <= config.k_max; ++i) {
    diag.mu.push_back(mu(i));
    diag.beta_prime.push_back(beta_prime(params, mu(i)));
  }

  const double ratio = diag.d_over_sqrt_n;
  const double widen = 1.0 + config.dead_band;
  if (ratio >= config.super_cutoff * widen) {
    out.kind = RegimeKind::Super;
    out.alpha = diag.alpha_n;
  } else if (ratio >= config.sub_cutoff * widen && ratio < config.super_cutoff / widen) {
    out.kind = RegimeKind::Critical;
    out.c = ratio;
    out.alpha = diag.alpha_n;
  } else if (ratio < config.sub_cutoff / widen) {
    std::size_t k = 0;
    for (std::size_t i = 1; i <= config.k_max; ++i) {
      if (diag.mu[i - 1] >= config.k_threshold) k = i;
    }
    if (k == 0) {
      out.kind = RegimeKind::Ambiguous;
      out.note = "no coordinate of mu reaches the k threshold";
    } else {
      out.kind = RegimeKind::Sub;
      out.k = k;
      out.alpha = diag.beta_prime[k - 1];
    }
  } else {
    out.kind = RegimeKind::Ambiguous;
    out.note = "d/sqrt(n) inside a classification dead-band";
  }
  return out;
}

LimitRegime classify_regime(const ParameterRule& rule, std::int64_t n, const ClassifierConfig& config) {
  return classify_regime(rule.at(n), config);
}

MuApproxReport mu_log_approx_check(const SystemParams& params, std::size_t k, double floor) {
  if (k < 1) throw std::invalid_argument("mu_log_approx_check: k >= 1");
  const NearFixedPoint mu = mu_sequence(params, floor);
  if (mu(k) < 0.5) throw std::invalid_argument("mu_log_approx_check: mu_k < 0.5, hypothesis fails");

  const double d = static_cast<double>(params.d);
  const double n = static_cast<double>(params.n);
  MuApproxReport rep;
  rep.k = k;
  double geometric = 0.0;
  double power = 1.0;
  for (std::size_t i = 0; i <= k; ++i) {
    geometric += power;
    if (i >= 1) rep.bound_shape += power * d / n;
    power *= d;
  }
  const double next = mu(k + 1) > 0.0 ? mu(k + 1) : mu.tail;
  rep.log_error = std::abs(std::log(next) - std::log(params.lambda) * geometric);

  const double first = beta_prime(params, mu(1));
  for (std::size_t i = 1; i <= k; ++i) {
    const double bp = beta_prime(params, mu(i));
    const double nxt = mu(i + 1) > 0.0 ? mu(i + 1) : (i == mu.size() ? mu.tail : 0.0);
    rep.derivative_ratios.push_back(params.lambda * mu(i) * bp / (d * nxt));
    if (i + 1 <= k) rep.ratios_to_first.push_back(bp / first);
  }
  return rep;
}

}  // namespace jsqd
