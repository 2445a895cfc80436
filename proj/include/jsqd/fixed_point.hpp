#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "jsqd/choice.hpp"
#include "jsqd/expr.hpp"

namespace jsqd {

inline constexpr double kDefaultMuFloor = 1e-15;

/// Near fixed point mu_1 = lambda, mu_{i+1} = lambda * beta(mu_i), truncated
/// at the first value below `floor`. Immutable once built.
struct NearFixedPoint {
  SystemParams params;
  double floor = kDefaultMuFloor;
  std::vector<double> mu;
  /// First dropped value (< floor); the residual of the truncated vector is 2*tail.
  double tail = 0.0;

  /// 1-based coordinate; 0 past the truncation.
  double operator()(std::size_t i) const { return i >= 1 && i <= mu.size() ? mu[i - 1] : 0.0; }
  std::size_t size() const { return mu.size(); }
};

NearFixedPoint mu_sequence(const SystemParams& params, double floor = kDefaultMuFloor);

struct DriftResidual {
  std::vector<double> residual;  // a(x)_i - b(x)_i for i = 1..len(x)+1
  double l1 = 0.0;
};

/// Inflow a(x)_i = lambda (beta(x_{i-1}) - beta(x_i)) with x_0 = 1.
std::vector<double> drift_inflow(const SystemParams& params, std::span<const double> x);
/// Outflow b(x)_i = x_i - x_{i+1}.
std::vector<double> drift_outflow(std::span<const double> x);

DriftResidual drift_residual(const SystemParams& params, std::span<const double> x);

/// t_{n,i}(z) = lambda sqrt(n) (beta(mu_i + z/sqrt n) - beta(mu_i)); t_{n,0} = 0.
double t_drift(const NearFixedPoint& mu, std::size_t i, double z);

/// (sqrt n / d)(exp((d/sqrt n)(z - alpha_n)) - exp(-(d/sqrt n) alpha_n)), the
/// exponential surrogate for t_{n,1}.
double t_drift_exponential(const SystemParams& params, double alpha_n, double z);

/// alpha_n = sqrt(n)(1 - lambda) - sqrt(n) log(d) / d.
double alpha_n(const SystemParams& params);

/// f_k^gamma = (1,...,1, gamma, 0, ...) with k leading ones. gamma = 0 gives f_k.
std::vector<double> fluid_fixed_point(std::size_t k, double gamma_coeff = 0.0);

/// m(x) = inf{i : x_{i+1} < 1}, the length of the shortest queue.
std::size_t min_queue_length(std::span<const double> x, double tolerance = 0.0);

enum class RegimeKind { Sub, Critical, Super, Ambiguous };

const char* to_string(RegimeKind kind);
RegimeKind parse_regime(const std::string& text);

struct ClassifierConfig {
  double sub_cutoff = 0.5;    // d/sqrt(n) below this: sub-sqrt(n)
  double super_cutoff = 10.0; // d/sqrt(n) at or above this: super-sqrt(n)
  double dead_band = 0.1;     // relative width around each cutoff reported as ambiguous
  double k_threshold = 0.5;   // k = largest index with mu_k >= k_threshold
  std::size_t k_max = 8;
  double mu_floor = kDefaultMuFloor;
};

struct RegimeDiagnostics {
  double d_over_sqrt_n = 0.0;
  double sqrt_n_gap = 0.0;  // sqrt(n)(1 - lambda)
  double alpha_n = 0.0;
  std::vector<double> mu;          // mu_1..mu_kmax
  std::vector<double> beta_prime;  // beta'(mu_1)..beta'(mu_kmax)
};

struct LimitRegime {
  RegimeKind kind = RegimeKind::Ambiguous;
  std::size_t k = 0;        // Sub only
  double alpha = 0.0;       // +inf allowed
  double c = 0.0;           // Critical only
  SystemParams params;
  RegimeDiagnostics diagnostics;
  std::string note;
};

LimitRegime classify_regime(const SystemParams& params, const ClassifierConfig& config = {});
LimitRegime classify_regime(const ParameterRule& rule, std::int64_t n, const ClassifierConfig& config = {});

struct MuApproxReport {
  std::size_t k = 0;
  double log_error = 0.0;    // |log mu_{k+1} - log(lambda) sum_{i=0}^k d^i|
  double bound_shape = 0.0;  // (1/n) sum_{i=1}^k d^{i+1}
  std::vector<double> derivative_ratios;  // lambda mu_i beta'(mu_i) / (d mu_{i+1}), i = 1..k
  std::vector<double> ratios_to_first;    // beta'(mu_i) / beta'(mu_1), i = 1..k-1
};

/// Requires mu_k >= 0.5.
MuApproxReport mu_log_approx_check(const SystemParams& params, std::size_t k, double floor = kDefaultMuFloor);

}  // namespace jsqd
