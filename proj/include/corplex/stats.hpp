#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "corplex/diversity.hpp"

namespace corplex::stats {

struct KsResult {
  double d = 0;
  double p = 1;
  std::size_t n1 = 0;
  std::size_t n2 = 0;
};

/// Two-sample Kolmogorov-Smirnov test. D is the largest ECDF gap over the
/// pooled distinct values (ties handled exactly); p is the asymptotic
/// Kolmogorov tail at sqrt(n1 n2 / (n1 + n2)) * D. Throws ArgumentError on
/// an empty sample.
KsResult ks_two_sample(std::span<const double> a, std::span<const double> b);
KsResult ks_two_sample(const SampleSeries& a, const SampleSeries& b);

/// Kahan-Babuska-Neumaier compensated sum.
double compensated_sum(std::span<const double> values);

struct MeanSd {
  double mean = 0;
  double sd = 0;
};

/// Arithmetic mean and population SD. Throws ArgumentError when empty.
MeanSd mean_sd(std::span<const double> values);

/// Quantile by linear interpolation between order statistics (Hyndman-Fan
/// type 7). `sorted` must be ascending and non-empty.
double quantile_sorted(std::span<const double> sorted, double q);

/// 0.9 * min(s, IQR/1.34) * n^(-1/5) with s the sample SD. When one of the
/// two spreads is zero the other is used. Throws DegenerateDistribution if
/// both are zero.
double silverman_bandwidth(std::span<const double> values);

struct KdePoint {
  double x;
  double density;
};

/// Gaussian KDE on `points` evenly spaced abscissae over [min - 3h, max + 3h].
/// Throws ArgumentError for fewer than 2 values and DegenerateDistribution
/// when all values are equal.
std::vector<KdePoint> kde(std::span<const double> values, std::optional<double> bandwidth = std::nullopt,
                          std::size_t points = 512);

}  // namespace corplex::stats
