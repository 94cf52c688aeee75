#include "corplex/lnre.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "corplex/error.hpp"
#include "corplex/special.hpp"

namespace corplex::lnre {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

// P(s, hi) - P(s, lo) without cancellation when both are close to 1.
double gamma_p_diff(double s, double lo, double hi) {
  if (hi <= lo) return 0.0;
  if (lo == 0.0) return special::gamma_p(s, hi);
  if (lo > s) return special::gamma_q(s, lo) - special::gamma_q(s, hi);
  return special::gamma_p(s, hi) - special::gamma_p(s, lo);
}

double zm_norm(double alpha, double lower, double upper) {
  const double denom = std::pow(upper, 1.0 - alpha) - (lower > 0 ? std::pow(lower, 1.0 - alpha) : 0.0);
  return (1.0 - alpha) / denom;
}

// log of 1 / (2 (bc/2)^(g+1) K_{g+1}(b)), the GIGP normalizer
double gigp_log_norm(const GigpParams& p) {
  return -(std::log(2.0) + (p.gamma + 1.0) * std::log(0.5 * p.b * p.c) +
           special::log_bessel_k(p.gamma + 1.0, p.b));
}

// Power-law families share one code path; ZM is fZM with A = 0.
double power_vocabulary(double alpha, double lower, double upper, double n) {
  const double c = zm_norm(alpha, lower, upper);
  const double s = 1.0 - alpha;
  double edge = std::pow(upper, -alpha) * -std::expm1(-n * upper);
  if (lower > 0) edge = std::pow(lower, -alpha) * -std::expm1(-n * lower) - edge;
  else edge = -edge;
  const double body = std::exp(alpha * std::log(n) + std::lgamma(s)) * gamma_p_diff(s, n * lower, n * upper);
  return c / alpha * (edge + body);
}

std::vector<double> power_spectrum_range(double alpha, double lower, double upper, std::uint64_t m_max,
                                         double n) {
  std::vector<double> out(m_max);
  const double log_c = std::log(zm_norm(alpha, lower, upper));
  const double log_n = std::log(n);
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const double s = static_cast<double>(m) - alpha;
    const double log_front = log_c + alpha * log_n + std::lgamma(s) - std::lgamma(static_cast<double>(m) + 1.0);
    out[m - 1] = std::exp(log_front) * gamma_p_diff(s, n * lower, n * upper);
  }
  return out;
}

double gigp_vocabulary(const GigpParams& p, double n) {
  const double s = std::exp(std::log(2.0 / (p.b * p.c)) + special::log_bessel_k(p.gamma, p.b) -
                            special::log_bessel_k(p.gamma + 1.0, p.b));
  if (n == 0) return 0.0;
  const double x = p.b * std::sqrt(1.0 + n * p.c);
  const double delta = special::log_bessel_k(p.gamma, x) - special::log_bessel_k(p.gamma, p.b) -
                       0.5 * p.gamma * std::log1p(n * p.c);
  return s * -std::expm1(delta);
}

std::vector<double> gigp_spectrum_range(const GigpParams& p, std::uint64_t m_max, double n) {
  std::vector<double> out(m_max);
  if (m_max == 0) return out;
  const double x = p.b * std::sqrt(1.0 + n * p.c);
  const auto log_k = special::log_bessel_k_sequence(p.gamma + 1.0, x, m_max);
  const double log_k_b = special::log_bessel_k(p.gamma + 1.0, p.b);
  const double log_n = std::log(n);
  const double log_half_bc = std::log(0.5 * p.b * p.c);
  const double log1p_nc = std::log1p(n * p.c);
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double l = md * log_n - std::lgamma(md + 1.0) + (md - 1.0) * log_half_bc -
                     0.5 * (md + p.gamma) * log1p_nc + log_k[m - 1] - log_k_b;
    out[m - 1] = std::exp(l);
  }
  return out;
}

}  // namespace

std::string_view to_string(Family family) {
  switch (family) {
    case Family::zm: return "zm";
    case Family::fzm: return "fzm";
    case Family::gigp: return "gigp";
  }
  return "?";
}

Family parse_family(std::string_view name) {
  std::string lower;
  for (char ch : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (lower == "zm") return Family::zm;
  if (lower == "fzm") return Family::fzm;
  if (lower == "gigp") return Family::gigp;
  throw ArgumentError("unknown LNRE family '" + std::string(name) + "' (expected zm, fzm or gigp)");
}

// ---------------------------------------------------------------------------

Model Model::zipf_mandelbrot(double alpha, double upper) {
  if (!(alpha > 0 && alpha < 1)) throw ArgumentError("ZM alpha must lie in (0, 1)");
  if (!(upper > 0) || !std::isfinite(upper)) throw ArgumentError("ZM upper cutoff B must be positive");
  return Model(ZmParams{alpha, upper});
}

Model Model::finite_zipf_mandelbrot(double alpha, double lower, double upper) {
  if (!(alpha > 0 && alpha < 1)) throw ArgumentError("fZM alpha must lie in (0, 1)");
  if (!(lower > 0)) throw ArgumentError("fZM lower cutoff A must be positive");
  if (!(upper > lower) || !std::isfinite(upper)) throw ArgumentError("fZM needs B > A");
  return Model(FzmParams{alpha, lower, upper});
}

Model Model::gigp(double gamma, double b, double c) {
  if (!std::isfinite(gamma)) throw ArgumentError("GIGP gamma must be finite");
  if (!(b > 0) || !std::isfinite(b)) throw ArgumentError("GIGP b must be positive");
  if (!(c > 0) || !std::isfinite(c)) throw ArgumentError("GIGP c must be positive");
  return Model(GigpParams{gamma, b, c});
}

Model Model::from_params(const Params& params) {
  return std::visit(Overloaded{
                        [](const ZmParams& p) { return zipf_mandelbrot(p.alpha, p.upper); },
                        [](const FzmParams& p) { return finite_zipf_mandelbrot(p.alpha, p.lower, p.upper); },
                        [](const GigpParams& p) { return gigp(p.gamma, p.b, p.c); },
                    },
                    params);
}

Family Model::family() const noexcept {
  return std::visit(Overloaded{
                        [](const ZmParams&) { return Family::zm; },
                        [](const FzmParams&) { return Family::fzm; },
                        [](const GigpParams&) { return Family::gigp; },
                    },
                    params_);
}

std::vector<std::pair<std::string, double>> Model::named_params() const {
  return std::visit(Overloaded{
                        [](const ZmParams& p) {
                          return std::vector<std::pair<std::string, double>>{{"alpha", p.alpha}, {"B", p.upper}};
                        },
                        [](const FzmParams& p) {
                          return std::vector<std::pair<std::string, double>>{
                              {"alpha", p.alpha}, {"A", p.lower}, {"B", p.upper}};
                        },
                        [](const GigpParams& p) {
                          return std::vector<std::pair<std::string, double>>{
                              {"gamma", p.gamma}, {"B", p.b}, {"C", p.c}};
                        },
                    },
                    params_);
}

std::size_t Model::free_parameters() const noexcept { return family() == Family::zm ? 2 : 3; }

double Model::population_size() const {
  return std::visit(Overloaded{
                        [](const ZmParams&) { return kInf; },
                        [](const FzmParams& p) {
                          return zm_norm(p.alpha, p.lower, p.upper) / p.alpha *
                                 (std::pow(p.lower, -p.alpha) - std::pow(p.upper, -p.alpha));
                        },
                        [](const GigpParams& p) {
                          return std::exp(std::log(2.0 / (p.b * p.c)) + special::log_bessel_k(p.gamma, p.b) -
                                          special::log_bessel_k(p.gamma + 1.0, p.b));
                        },
                    },
                    params_);
}

double Model::type_density(double pi) const {
  if (!(pi > 0)) return 0.0;
  return std::visit(Overloaded{
                        [pi](const ZmParams& p) {
                          return pi > p.upper ? 0.0 : zm_norm(p.alpha, 0.0, p.upper) * std::pow(pi, -p.alpha - 1.0);
                        },
                        [pi](const FzmParams& p) {
                          return (pi < p.lower || pi > p.upper)
                                     ? 0.0
                                     : zm_norm(p.alpha, p.lower, p.upper) * std::pow(pi, -p.alpha - 1.0);
                        },
                        [pi](const GigpParams& p) {
                          return std::exp(gigp_log_norm(p) + (p.gamma - 1.0) * std::log(pi) - pi / p.c -
                                          p.b * p.b * p.c / (4.0 * pi));
                        },
                    },
                    params_);
}

// ---------------------------------------------------------------------------

double expected_vocabulary(const Model& model, double n) {
  if (!(n >= 0)) throw ArgumentError("sample size N must be non-negative");
  if (n == 0) return 0.0;
  return std::visit(Overloaded{
                        [n](const ZmParams& p) { return power_vocabulary(p.alpha, 0.0, p.upper, n); },
                        [n](const FzmParams& p) { return power_vocabulary(p.alpha, p.lower, p.upper, n); },
                        [n](const GigpParams& p) { return gigp_vocabulary(p, n); },
                    },
                    model.params());
}

std::vector<double> expected_spectrum_range(const Model& model, std::uint64_t m_max, double n) {
  if (!(n > 0)) throw ArgumentError("expected spectrum needs N >= 1");
  return std::visit(
      Overloaded{
          [&](const ZmParams& p) { return power_spectrum_range(p.alpha, 0.0, p.upper, m_max, n); },
          [&](const FzmParams& p) { return power_spectrum_range(p.alpha, p.lower, p.upper, m_max, n); },
          [&](const GigpParams& p) { return gigp_spectrum_range(p, m_max, n); },
      },
      model.params());
}

double expected_spectrum(const Model& model, std::uint64_t m, double n) {
  if (m < 1) throw ArgumentError("frequency class m must be at least 1");
  if (model.family() == Family::gigp) return expected_spectrum_range(model, m, n).back();
  // power-law classes are independent; avoid computing 1..m-1
  const auto& params = model.params();
  if (const auto* zm = std::get_if<ZmParams>(&params)) {
    if (!(n > 0)) throw ArgumentError("expected spectrum needs N >= 1");
    const double s = static_cast<double>(m) - zm->alpha;
    return std::exp(std::log(zm_norm(zm->alpha, 0.0, zm->upper)) + zm->alpha * std::log(n) + std::lgamma(s) -
                    std::lgamma(static_cast<double>(m) + 1.0)) *
           special::gamma_p(s, n * zm->upper);
  }
  const auto& f = std::get<FzmParams>(params);
  if (!(n > 0)) throw ArgumentError("expected spectrum needs N >= 1");
  const double s = static_cast<double>(m) - f.alpha;
  return std::exp(std::log(zm_norm(f.alpha, f.lower, f.upper)) + f.alpha * std::log(n) + std::lgamma(s) -
                  std::lgamma(static_cast<double>(m) + 1.0)) *
         gamma_p_diff(s, n * f.lower, n * f.upper);
}

double variance_vocabulary(const Model& model, double n) {
  if (!(n >= 0)) throw ArgumentError("sample size N must be non-negative");
  if (n == 0) return 0.0;
  return std::max(0.0, expected_vocabulary(model, 2.0 * n) - expected_vocabulary(model, n));
}

double variance_spectrum(const Model& model, std::uint64_t m, double n) {
  const double md = static_cast<double>(m);
  const double coef = std::exp(std::lgamma(2.0 * md + 1.0) - 2.0 * std::lgamma(md + 1.0) - 2.0 * md * std::log(2.0));
  return std::max(0.0, expected_spectrum(model, m, n) - coef * expected_spectrum(model, 2 * m, 2.0 * n));
}

double density_expectation(const Model& model, const std::function<double(double)>& f,
                           const QuadratureOptions& options) {
  double lo = 0, hi = 0;
  std::visit(Overloaded{
                 [&](const ZmParams& p) {
                   hi = std::log(p.upper);
                   lo = hi - std::max(60.0, 45.0 / (1.0 - p.alpha));
                 },
                 [&](const FzmParams& p) {
                   lo = std::log(p.lower);
                   hi = std::log(p.upper);
                 },
                 [&](const GigpParams& p) {
                   // beyond these the exp(-b^2 c / 4pi) and exp(-pi/c) factors are below e^-700
                   lo = std::log(p.b * p.b * p.c / (4.0 * 700.0));
                   hi = std::log(700.0 * p.c);
                 },
             },
             model.params());
  auto integrand = [&](double t) {
    const double pi = std::exp(t);
    const double g = model.type_density(pi);
    if (g == 0.0) return 0.0;
    return f(pi) * g * pi;
  };
  return integrate(integrand, lo, hi, options);
}

// ---------------------------------------------------------------------------

ExpectedGrowth extrapolate_growth(const Model& model, std::span<const double> checkpoints) {
  if (!model.fitted_n) throw ArgumentError("extrapolate_growth needs a fitted model");
  ExpectedGrowth out;
  out.interpolated.kind = GrowthKind::interpolated;
  out.extrapolated.kind = GrowthKind::extrapolated;
  double prev = -1;
  for (double n : checkpoints) {
    if (!(n > prev)) throw ArgumentError("growth checkpoints must be strictly increasing");
    if (!(n > 0)) throw ArgumentError("growth checkpoints must be positive");
    prev = n;
    const auto spec = expected_spectrum_range(model, 2, n);
    GrowthPoint point{n, expected_vocabulary(model, n), spec[0], spec[1]};
    (n <= *model.fitted_n ? out.interpolated : out.extrapolated).checkpoints.push_back(point);
  }
  return out;
}

GrowthZTest compare_growth_z(const Model& model_a, const FrequencySpectrum& spectrum_a, const Model& model_b,
                             const FrequencySpectrum& spectrum_b) {
  GrowthZTest out;
  out.growth_a = growth_rate(spectrum_a);
  out.growth_b = growth_rate(spectrum_b);
  const double na = static_cast<double>(spectrum_a.tokens());
  const double nb = static_cast<double>(spectrum_b.tokens());
  const double var = variance_spectrum(model_a, 1, na) / (na * na) + variance_spectrum(model_b, 1, nb) / (nb * nb);
  if (!(var > 0) || !std::isfinite(var)) {
    throw UndefinedMeasure("growth-rate Z statistic: combined variance is zero");
  }
  out.z = (out.growth_a - out.growth_b) / std::sqrt(var);
  out.p = special::normal_two_sided_p(out.z);
  return out;
}

}  // namespace corplex::lnre
