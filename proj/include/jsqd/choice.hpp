#pragma once

#include <cstdint>
#include <vector>

namespace jsqd {

/// One prelimit system: n servers, d choices per arrival, per-server arrival rate lambda.
///
/// lambda = 0 is accepted (pure-death systems); operations that need
/// lambda in (0,1) check it themselves.
struct SystemParams {
  std::int64_t n = 1;
  std::int64_t d = 1;
  double lambda = 0.0;

  void validate() const;
  double sqrt_n() const;
};

/// Inputs within this distance outside [0,1] are clamped; anything further is rejected.
inline constexpr double kInputTolerance = 1e-12;

/// Products switch to log space above this many factors.
inline constexpr std::int64_t kLogSpaceThreshold = 50;

/// Probability that d servers sampled without replacement all lie in a
/// fraction-x subset: prod_{i<d} ((x - i/n) / (1 - i/n))^+.
double beta(const SystemParams& params, double x);

/// Derivative of beta. Zero on x <= (d-1)/n, including the kink itself.
double beta_prime(const SystemParams& params, double x);

/// With-replacement surrogate x^d.
double gamma(const SystemParams& params, double x);

/// log(beta(x)), -inf where beta vanishes. Accurate for large d.
double log_beta(const SystemParams& params, double x);

// Extensions to the whole real line: zero below 0, the same product above 1.
// No domain check; used for centred/scaled arguments mu + z/sqrt(n).
double beta_extended(const SystemParams& params, double x);
double beta_prime_extended(const SystemParams& params, double x);

struct ChoiceEval {
  double x = 0.0;
  double beta = 0.0;
  double beta_prime = 0.0;
  double gamma = 0.0;
};

ChoiceEval evaluate_choice(const SystemParams& params, double x);

/// beta at the lattice points m/n, m = 0..n, filled by the exact ratio
/// recursion C(m-1,d)/C(m,d) = (m-d)/m downward from beta(1) = 1.
///
/// The occupancy simulator only ever evaluates beta at multiples of 1/n,
/// so one O(n) table replaces an O(d) product per event.
class LatticeChoiceTable {
 public:
  LatticeChoiceTable(std::int64_t n, std::int64_t d);

  double operator[](std::int64_t m) const { return values_[static_cast<std::size_t>(m)]; }
  std::int64_t n() const { return n_; }
  std::int64_t d() const { return d_; }

 private:
  std::int64_t n_;
  std::int64_t d_;
  std::vector<double> values_;
};

/// Finite-n diagnostics comparing beta with its with-replacement surrogate.
struct AsymptoticReport {
  double epsilon = 0.0;
  std::size_t grid_points = 0;
  double sup_ratio_error = 0.0;        // sup_{[eps,1]} |beta/gamma - 1|
  double sup_prime_ratio_error = 0.0;  // sup_{[eps,1]} |beta'/gamma' - 1|
  double sup_log_error = 0.0;          // sup_{[eps,1]} |log beta - log gamma|
  double zero_window_end = 0.0;        // 1 - 2 log d / d
  double sup_beta_low = 0.0;           // sup_{[0, 1 - 2log d/d]} beta
  double sup_beta_prime_low = 0.0;     // same for beta'
  double d2_over_n = 0.0;
  /// Empirical constant C = 1/eps for the d^2/n log-error bound. Valid when
  /// d <= n*eps/2; non-normative outside that range.
  double log_bound_constant = 0.0;
  double log_bound = 0.0;
  bool bound_applicable = false;
};

AsymptoticReport asymptotic_report(const SystemParams& params, double epsilon);

}  // namespace jsqd
