#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "corplex/error.hpp"
#include "corplex/stats.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corplex;
using namespace corplex::stats;

namespace {

double trapezoid(const std::vector<KdePoint>& pts) {
  double s = 0;
  for (std::size_t i = 1; i < pts.size(); ++i) s += 0.5 * (pts[i].density + pts[i - 1].density) * (pts[i].x - pts[i - 1].x);
  return s;
}

std::vector<double> normal_sample(std::size_t n, double mean, double sd, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> d(mean, sd);
  std::vector<double> v(n);
  for (auto& x : v) x = d(eng);
  return v;
}

}  // namespace

TEST_SUITE("stats") {
  TEST_CASE("mean and population sd against 50-digit arithmetic") {
    std::vector<double> v{1e8 + 0.1, 1e8 + 0.2, 1e8 + 0.3, 1e8 + 0.4};
    auto m = mean_sd(v);
    auto p = oracle::precise_mean_sd(v);
    CHECK(m.mean == doctest::Approx(p.mean).epsilon(1e-15));
    CHECK(m.sd == doctest::Approx(p.sd).epsilon(1e-7));
    auto r = normal_sample(5000, 70, 12, 3);
    auto mr = mean_sd(r);
    auto pr = oracle::precise_mean_sd(r);
    CHECK(mr.mean == doctest::Approx(pr.mean).epsilon(1e-14));
    CHECK(mr.sd == doctest::Approx(pr.sd).epsilon(1e-13));
    std::vector<double> empty;
    CHECK_THROWS_AS(mean_sd(empty), ArgumentError);
  }

  TEST_CASE("compensated sum") {
    std::vector<double> v{1.0, 1e100, 1.0, -1e100};
    CHECK(compensated_sum(v) == 2.0);
  }

  TEST_CASE("type 7 quantiles") {
    std::vector<double> v{1, 2, 3, 4};
    CHECK(quantile_sorted(v, 0.0) == 1);
    CHECK(quantile_sorted(v, 1.0) == 4);
    CHECK(quantile_sorted(v, 0.25) == doctest::Approx(1.75));
    CHECK(quantile_sorted(v, 0.5) == doctest::Approx(2.5));
  }

  TEST_CASE("KS statistic by hand and against the brute-force oracle") {
    std::vector<double> a{1, 2, 3}, b{2, 3, 4, 5};
    auto r = ks_two_sample(a, b);
    // ECDF gaps: at 1: 1/3; at 2: 2/3 - 1/4; at 3: 1 - 1/2
    CHECK(r.d == doctest::Approx(0.5));
    CHECK(r.d == oracle::brute_ks_d(a, b));
    CHECK(r.n1 == 3);
    CHECK(r.n2 == 4);
    auto self = ks_two_sample(a, a);
    CHECK(self.d == 0);
    CHECK(self.p == 1);
    std::vector<double> empty;
    CHECK_THROWS_AS(ks_two_sample(a, empty), ArgumentError);
  }

  TEST_CASE("KS with ties") {
    std::vector<double> a{1, 1, 1, 2}, b{1, 2, 2, 2};
    CHECK(ks_two_sample(a, b).d == doctest::Approx(0.5));
    CHECK(ks_two_sample(a, b).d == oracle::brute_ks_d(a, b));
  }

  TEST_CASE("KS detects a shift and not a resample") {
    auto x = normal_sample(300, 0, 1, 1), y = normal_sample(300, 0.5, 1, 2), z = normal_sample(300, 0, 1, 3);
    CHECK(ks_two_sample(x, y).p < 1e-4);
    CHECK(ks_two_sample(x, z).p > 0.01);
  }

  TEST_CASE("Silverman bandwidth") {
    std::vector<double> v{1, 2, 3, 4, 10};
    auto m = mean_sd(v);
    const double s = m.sd * std::sqrt(5.0 / 4.0);
    const double iqr = (4.0 - 2.0) / 1.34;
    CHECK(silverman_bandwidth(v) == doctest::Approx(0.9 * std::min(s, iqr) * std::pow(5.0, -0.2)));
    // IQR of zero falls back to the SD
    std::vector<double> w{5, 5, 5, 5, 5, 5, 9};
    const double sw = mean_sd(w).sd * std::sqrt(7.0 / 6.0);
    CHECK(silverman_bandwidth(w) == doctest::Approx(0.9 * sw * std::pow(7.0, -0.2)));
    std::vector<double> flat{3, 3, 3};
    CHECK_THROWS_AS(silverman_bandwidth(flat), DegenerateDistribution);
  }

  TEST_CASE("KDE integrates to one and is symmetric for symmetric data") {
    std::vector<double> v{-3, -1, -0.5, 0.5, 1, 3};
    auto k = kde(v);
    CHECK(k.size() == 512);
    CHECK(trapezoid(k) == doctest::Approx(1.0).epsilon(1e-3));
    for (std::size_t i = 0; i < k.size(); ++i) {
      CHECK(k[i].x == doctest::Approx(-k[k.size() - 1 - i].x).epsilon(1e-12));
      CHECK(k[i].density == doctest::Approx(k[k.size() - 1 - i].density).epsilon(1e-9));
    }
  }

  TEST_CASE("KDE of a bimodal sample has two peaks") {
    auto v = normal_sample(400, -4, 1, 5);
    auto w = normal_sample(400, 4, 1, 6);
    v.insert(v.end(), w.begin(), w.end());
    auto k = kde(v);
    int peaks = 0;
    for (std::size_t i = 1; i + 1 < k.size(); ++i) {
      if (k[i].density > k[i - 1].density && k[i].density > k[i + 1].density) ++peaks;
    }
    CHECK(peaks == 2);
  }

  TEST_CASE("lower spread gives a higher, narrower peak") {
    auto narrow = normal_sample(500, 0.56, 0.03, 7);
    auto broad = normal_sample(500, 0.69, 0.06, 8);
    auto kn = kde(narrow), kb = kde(broad);
    auto peak = [](const std::vector<KdePoint>& k) {
      return std::max_element(k.begin(), k.end(), [](auto& a, auto& b) { return a.density < b.density; })->density;
    };
    CHECK(peak(kn) > peak(kb));
  }

  TEST_CASE("KDE errors") {
    std::vector<double> one{1.0}, same{2, 2, 2};
    CHECK_THROWS_AS(kde(one), ArgumentError);
    CHECK_THROWS_AS(kde(same), DegenerateDistribution);
    std::vector<double> v{1, 2, 3};
    CHECK_NOTHROW(kde(v, 0.5, 16));
    CHECK_THROWS_AS(kde(v, -1.0), ArgumentError);
  }
}
