#pragma once

#include <span>
#include <vector>

namespace jsqd {

/// Two-sample Kolmogorov-Smirnov statistic sup_x |F_a(x) - F_b(x)|.
/// Ties across samples are stepped together. Throws on empty input.
double ks_two_sample(std::span<const double> a, std::span<const double> b);

/// Asymptotic p-value of D with effective size na*nb/(na+nb), using the
/// Kolmogorov series at (sqrt(ne) + 0.12 + 0.11/sqrt(ne)) D.
double ks_pvalue(double d, std::size_t na, std::size_t nb);

/// Kolmogorov survival function Q(x) = 2 sum_{j>=1} (-1)^{j-1} exp(-2 j^2 x^2).
double kolmogorov_q(double x);

double mean(std::span<const double> xs);
/// Unbiased sample variance (0 for fewer than two values).
double variance(std::span<const double> xs);
/// Linear-interpolation quantile (type 7), q in [0,1].
double quantile(std::span<const double> xs, double q);

}  // namespace jsqd
