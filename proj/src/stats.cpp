#include "corplex/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "corplex/error.hpp"
#include "corplex/special.hpp"

namespace corplex::stats {

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw ArgumentError("KS test needs two non-empty samples");
  std::vector<double> x(a.begin(), a.end()), y(b.begin(), b.end());
  std::sort(x.begin(), x.end());
  std::sort(y.begin(), y.end());
  const double n1 = static_cast<double>(x.size()), n2 = static_cast<double>(y.size());
  std::size_t i = 0, j = 0;
  double d = 0;
  // Advance both ECDFs past each distinct value before comparing.
  while (i < x.size() || j < y.size()) {
    double v;
    if (j == y.size() || (i < x.size() && x[i] <= y[j])) {
      v = x[i];
    } else {
      v = y[j];
    }
    while (i < x.size() && x[i] == v) ++i;
    while (j < y.size() && y[j] == v) ++j;
    d = std::max(d, std::fabs(i / n1 - j / n2));
  }
  KsResult r;
  r.d = d;
  r.n1 = x.size();
  r.n2 = y.size();
  r.p = special::kolmogorov_sf(std::sqrt(n1 * n2 / (n1 + n2)) * d);
  return r;
}

KsResult ks_two_sample(const SampleSeries& a, const SampleSeries& b) { return ks_two_sample(a.values, b.values); }

double compensated_sum(std::span<const double> values) {
  double sum = 0, c = 0;
  for (double v : values) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      c += (sum - t) + v;
    } else {
      c += (v - t) + sum;
    }
    sum = t;
  }
  return sum + c;
}

MeanSd mean_sd(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("mean/SD of an empty sample");
  const double n = static_cast<double>(values.size());
  MeanSd r;
  r.mean = compensated_sum(values) / n;
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double dv = values[i] - r.mean;
    sq[i] = dv * dv;
  }
  r.sd = std::sqrt(compensated_sum(sq) / n);
  return r;
}

double quantile_sorted(std::span<const double> sorted, double q) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

double silverman_bandwidth(std::span<const double> values) {
  if (values.size() < 2) throw ArgumentError("bandwidth needs at least 2 values");
  const double n = static_cast<double>(values.size());
  const MeanSd m = mean_sd(values);
  const double s = m.sd * std::sqrt(n / (n - 1.0));
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double iqr = (quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25)) / 1.34;
  double spread = std::min(s, iqr);
  if (!(spread > 0)) spread = std::max(s, iqr);
  if (!(spread > 0)) throw DegenerateDistribution("KDE: all values are identical");
  return 0.9 * spread * std::pow(n, -0.2);
}

std::vector<KdePoint> kde(std::span<const double> values, std::optional<double> bandwidth, std::size_t points) {
  if (values.size() < 2) throw ArgumentError("KDE needs at least 2 values");
  if (points < 2) throw ArgumentError("KDE needs at least 2 grid points");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) throw DegenerateDistribution("KDE: all values are identical");
  const double h = bandwidth ? *bandwidth : silverman_bandwidth(values);
  if (!(h > 0) || !std::isfinite(h)) throw ArgumentError("KDE bandwidth must be positive");

  const double start = lo - 3.0 * h, stop = hi + 3.0 * h;
  const double step = (stop - start) / static_cast<double>(points - 1);
  const double norm = 1.0 / (static_cast<double>(values.size()) * h * std::sqrt(2.0 * std::numbers::pi));
  std::vector<KdePoint> out(points);
  std::vector<double> terms(values.size());
  for (std::size_t k = 0; k < points; ++k) {
    const double x = k + 1 == points ? stop : start + step * static_cast<double>(k);
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double z = (x - values[i]) / h;
      terms[i] = std::exp(-0.5 * z * z);
    }
    out[k] = KdePoint{x, norm * compensated_sum(terms)};
  }
  return out;
}

}  // namespace corplex::stats
