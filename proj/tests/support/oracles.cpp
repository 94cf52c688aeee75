#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_dec_float.hpp>

namespace corplex::oracle {

BruteDiversity brute_diversity(const std::vector<std::vector<std::string>>& documents, std::size_t segment_size) {
  BruteDiversity r;
  std::map<std::string, std::uint64_t> freq;
  for (const auto& doc : documents) {
    for (const auto& k : doc) ++freq[k];
    for (std::size_t begin = 0; begin + segment_size <= doc.size(); begin += segment_size) {
      std::set<std::string> seen(doc.begin() + static_cast<std::ptrdiff_t>(begin),
                                 doc.begin() + static_cast<std::ptrdiff_t>(begin + segment_size));
      r.segment_ttrs.push_back(static_cast<double>(seen.size()) / static_cast<double>(segment_size));
    }
    r.n += doc.size();
  }
  r.v = freq.size();
  for (const auto& [key, f] : freq) ++r.spectrum[f];
  if (r.n > 0) {
    r.ttr = static_cast<double>(r.v) / static_cast<double>(r.n);
    r.growth_rate = static_cast<double>(r.spectrum.count(1) ? r.spectrum.at(1) : 0) / static_cast<double>(r.n);
  }
  if (!r.segment_ttrs.empty()) {
    double sum = 0;
    for (double t : r.segment_ttrs) sum += t;
    r.msttr = sum / static_cast<double>(r.segment_ttrs.size());
  }
  return r;
}

double brute_ks_d(std::span<const double> a, std::span<const double> b) {
  const double n1 = static_cast<double>(a.size());
  const double n2 = static_cast<double>(b.size());
  auto at_most = [](std::span<const double> s, double x) {
    std::size_t c = 0;
    for (double v : s) c += v <= x ? 1 : 0;
    return c;
  };
  double d = 0;
  for (auto pool : {a, b}) {
    for (double x : pool) {
      const double gap = std::fabs(static_cast<double>(at_most(a, x)) / n1 - static_cast<double>(at_most(b, x)) / n2);
      d = std::max(d, gap);
    }
  }
  return d;
}

double kolmogorov_series(double lambda) {
  if (!(lambda > 0)) return 1.0;
  const long double l2 = static_cast<long double>(lambda) * lambda;
  long double sum = 0;
  for (long k = 1; k < 10'000'000; ++k) {
    const long double term = std::exp(-2.0L * k * k * l2);
    sum += (k % 2 == 1) ? term : -term;
    if (term < 1e-30L) break;
  }
  return static_cast<double>(std::clamp(2.0L * sum, 0.0L, 1.0L));
}

PreciseMeanSd precise_mean_sd(std::span<const double> values) {
  using Big = boost::multiprecision::cpp_dec_float_50;
  Big sum = 0;
  for (double v : values) sum += Big(v);
  const Big n = Big(values.size());
  const Big mean = sum / n;
  Big ss = 0;
  for (double v : values) {
    const Big d = Big(v) - mean;
    ss += d * d;
  }
  const Big sd = sqrt(ss / n);
  return {mean.convert_to<double>(), sd.convert_to<double>()};
}

double zm_expected_types(double alpha, double upper, double n) {
  // E[V(N)] = C N^alpha int_0^{N B} t^(-alpha-1) (1 - e^-t) dt,  C = (1-alpha) / B^(1-alpha)
  using boost::math::quadrature::gauss_kronrod;
  auto h = [](double t) { return t > 0 ? -std::expm1(-t) / t : 1.0; };
  // (0, 1]: t = s^(1/(1-alpha)) absorbs the t^-alpha singularity
  auto low = [&](double s) { return h(std::pow(s, 1.0 / (1.0 - alpha))) / (1.0 - alpha); };
  // (1, m]: t = e^u
  auto high = [&](double u) { return std::exp(-alpha * u) * -std::expm1(-std::exp(u)); };
  const double m = n * upper;
  double integral = gauss_kronrod<double, 61>::integrate(low, 0.0, 1.0, 15, 1e-13);
  if (m > 1.0) integral += gauss_kronrod<double, 61>::integrate(high, 0.0, std::log(m), 15, 1e-13);
  const double c = (1.0 - alpha) / std::pow(upper, 1.0 - alpha);
  return c * std::pow(n, alpha) * integral;
}

namespace {

double uniform(std::mt19937_64& eng) { return std::uniform_real_distribution<double>(0.0, 1.0)(eng); }

// Envelope min(t, 1) t^(-alpha-1): t^-alpha on (0, 1], t^(-alpha-1) on (1, m].
double draw_scaled_probability(double alpha, double m, std::mt19937_64& eng) {
  const double mass_low = 1.0 / (1.0 - alpha);
  const double mass_high = (1.0 - std::pow(m, -alpha)) / alpha;
  while (true) {
    double t;
    if (uniform(eng) * (mass_low + mass_high) < mass_low) {
      t = std::pow(uniform(eng), 1.0 / (1.0 - alpha));
    } else {
      t = std::pow(1.0 - uniform(eng) * (1.0 - std::pow(m, -alpha)), -1.0 / alpha);
    }
    if (t <= 0) continue;
    if (uniform(eng) * std::min(t, 1.0) <= -std::expm1(-t)) return t;
  }
}

std::uint64_t zero_truncated_poisson(double t, std::mt19937_64& eng) {
  if (t > 20) {
    std::poisson_distribution<std::uint64_t> pois(t);
    std::uint64_t k;
    do k = pois(eng);
    while (k == 0);
    return k;
  }
  // inversion over P(k) = t^k e^-t / (k! (1 - e^-t))
  const double u = uniform(eng);
  double p = t * std::exp(-t) / -std::expm1(-t);
  double cdf = p;
  std::uint64_t k = 1;
  while (cdf < u && k < 1000) {
    ++k;
    p *= t / static_cast<double>(k);
    cdf += p;
  }
  return k;
}

}  // namespace

std::vector<std::uint64_t> sample_zm_frequencies(double alpha, double upper, double n, std::mt19937_64& eng) {
  const double m = n * upper;
  if (!(m > 1.0)) throw std::invalid_argument("sample_zm_frequencies needs n * upper > 1");
  std::poisson_distribution<std::uint64_t> types(zm_expected_types(alpha, upper, n));
  const std::uint64_t v = types(eng);
  std::vector<std::uint64_t> freqs(v);
  for (auto& f : freqs) f = zero_truncated_poisson(draw_scaled_probability(alpha, m, eng), eng);
  return freqs;
}

std::size_t subsample_types(const std::vector<std::string>& keys, std::size_t n_prime, std::mt19937_64& eng) {
  std::vector<std::size_t> idx(keys.size());
  std::iota(idx.begin(), idx.end(), 0);
  // partial Fisher-Yates: the first n_prime slots end up a uniform sample
  for (std::size_t i = 0; i < n_prime && i < idx.size(); ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, idx.size() - 1);
    std::swap(idx[i], idx[pick(eng)]);
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < n_prime && i < idx.size(); ++i) seen.insert(keys[idx[i]]);
  return seen.size();
}

}  // namespace corplex::oracle
