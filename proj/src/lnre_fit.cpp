#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "corplex/error.hpp"
#include "corplex/lnre.hpp"
#include "corplex/special.hpp"

namespace corplex::lnre {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double logistic(double u) { return 1.0 / (1.0 + std::exp(-u)); }
double logit(double p) { return std::log(p / (1.0 - p)); }

// Maps unconstrained optimizer coordinates to a model. Returns nullopt when
// the coordinates leave the representable range.
std::optional<Model> decode(Family family, std::span<const double> u) {
  try {
    switch (family) {
      case Family::zm: {
        const double alpha = logistic(u[0]);
        const double upper = std::exp(u[1]);
        if (!(alpha > 0 && alpha < 1) || !std::isfinite(upper) || upper <= 0) return std::nullopt;
        return Model::zipf_mandelbrot(alpha, upper);
      }
      case Family::fzm: {
        const double alpha = logistic(u[0]);
        const double lower = std::exp(u[1]);
        const double upper = lower + std::exp(u[2]);
        if (!(alpha > 0 && alpha < 1) || !(lower > 0) || !(upper > lower) || !std::isfinite(upper)) {
          return std::nullopt;
        }
        return Model::finite_zipf_mandelbrot(alpha, lower, upper);
      }
      case Family::gigp: {
        const double gamma = -logistic(u[0]);
        const double b = std::exp(u[1]);
        const double c = std::exp(u[2]);
        if (!(gamma < 0 && gamma > -1) || !(b > 0) || !(c > 0) || !std::isfinite(b) || !std::isfinite(c)) {
          return std::nullopt;
        }
        return Model::gigp(gamma, b, c);
      }
    }
  } catch (const ArgumentError&) {
  }
  return std::nullopt;
}

std::vector<double> encode(const Model& model) {
  return std::visit(
      [](const auto& p) -> std::vector<double> {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ZmParams>) {
          return {logit(p.alpha), std::log(p.upper)};
        } else if constexpr (std::is_same_v<T, FzmParams>) {
          return {logit(p.alpha), std::log(p.lower), std::log(p.upper - p.lower)};
        } else {
          return {logit(-p.gamma), std::log(p.b), std::log(p.c)};
        }
      },
      model.params());
}

std::vector<double> natural(const Model& model) {
  std::vector<double> out;
  for (const auto& [name, value] : model.named_params()) out.push_back(value);
  return out;
}

// In-place Cholesky; false if the matrix is not positive definite.
bool cholesky(std::vector<double>& a, std::size_t n) {
  for (std::size_t j = 0; j < n; ++j) {
    double d = a[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= a[j * n + k] * a[j * n + k];
    if (!(d > 0)) return false;
    d = std::sqrt(d);
    a[j * n + j] = d;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = a[i * n + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * n + k] * a[j * n + k];
      a[i * n + j] = s / d;
    }
  }
  return true;
}

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

// Deterministic 5-point start grid derived from the low end of the spectrum.
std::vector<Model> start_grid(const SpectrumObservation& obs, Family family) {
  const double n = obs.n;
  const double v1 = std::max(obs.vm.size() > 0 ? obs.vm[0] : 1.0, 1.0);
  const double v2 = obs.vm.size() > 1 ? obs.vm[1] : 0.0;
  // For a power law with a large upper cutoff, V2/V1 = (1 - alpha)/2.
  const double alpha0 = clamp(1.0 - 2.0 * v2 / v1, 0.1, 0.9);
  // Upper cutoff B that reproduces V1 given alpha.
  auto upper_for = [&](double alpha) {
    const double c = v1 / std::exp(alpha * std::log(n) + std::lgamma(1.0 - alpha));
    const double b = std::pow(c / (1.0 - alpha), 1.0 / (alpha - 1.0));
    return clamp(b, 10.0 / n, 1.0);
  };
  std::vector<Model> starts;
  auto push = [&](auto make) {
    try {
      starts.push_back(make());
    } catch (const ArgumentError&) {
    }
  };
  switch (family) {
    case Family::zm:
      for (double d : {0.0, -0.1, 0.1, -0.2, 0.2}) {
        const double a = clamp(alpha0 + d, 0.02, 0.98);
        push([&] { return Model::zipf_mandelbrot(a, upper_for(a)); });
      }
      break;
    case Family::fzm: {
      const std::pair<double, double> grid[] = {{0.0, 2.0}, {0.0, 10.0}, {-0.1, 3.0}, {0.1, 3.0}, {0.0, 50.0}};
      for (auto [d, k] : grid) {
        const double a = clamp(alpha0 + d, 0.02, 0.98);
        const double upper = upper_for(a);
        const double c = (1.0 - a) * std::pow(upper, a - 1.0);
        // lower cutoff giving a population of k * V
        const double lower = std::pow(a * k * obs.v / c + std::pow(upper, -a), -1.0 / a);
        push([&] { return Model::finite_zipf_mandelbrot(a, std::min(lower, 0.5 * upper), upper); });
      }
      break;
    }
    case Family::gigp: {
      const std::pair<double, double> grid[] = {{0.0, 10.0}, {0.0, 1.0}, {0.0, 100.0}, {-0.15, 10.0}, {0.15, 10.0}};
      for (auto [d, k] : grid) {
        const double a = clamp(alpha0 + d, 0.05, 0.95);
        // exponential cutoff matched to the power law's upper cutoff, lower
        // cutoff b^2 c / 4 placed at 1 / (k N)
        const double c = upper_for(a) / std::pow(std::tgamma(2.0 - a), 1.0 / (1.0 - a));
        const double b = 2.0 / std::sqrt(c * k * n);
        push([&] { return Model::gigp(-a, b, c); });
      }
      break;
    }
  }
  return starts;
}

}  // namespace

SpectrumObservation observation_from(const FrequencySpectrum& spectrum, std::size_t max_classes) {
  SpectrumObservation obs;
  obs.n = static_cast<double>(spectrum.tokens());
  obs.v = static_cast<double>(spectrum.types());
  obs.vm.resize(max_classes);
  for (std::size_t m = 1; m <= max_classes; ++m) obs.vm[m - 1] = static_cast<double>(spectrum[m]);
  return obs;
}

SpectrumObservation expected_observation(const Model& model, double n, std::size_t max_classes) {
  SpectrumObservation obs;
  obs.n = n;
  obs.v = expected_vocabulary(model, n);
  obs.vm = expected_spectrum_range(model, max_classes, n);
  return obs;
}

std::size_t fit_classes(const SpectrumObservation& obs, Family family, const FitOptions& options) {
  const std::size_t limit = std::min(options.max_classes, obs.vm.size());
  std::size_t k = 0;
  while (k < limit && obs.vm[k] >= options.min_class_count) ++k;
  // Small spectra: fall back to the nonempty leading classes so that at
  // least one degree of freedom remains.
  const std::size_t params = family == Family::zm ? 2 : 3;
  if (k < params) {
    std::size_t nonempty = 0;
    while (nonempty < limit && obs.vm[nonempty] > 0) ++nonempty;
    k = std::min(std::max<std::size_t>(params, 3), nonempty);
  }
  return k;
}

double multivariate_chisq(const Model& model, const SpectrumObservation& obs, std::size_t classes) {
  const std::size_t k = classes;
  const std::size_t dim = k + 1;
  const double n = obs.n;
  const auto e_n = expected_spectrum_range(model, k, n);
  const auto e_2n = expected_spectrum_range(model, 2 * k, 2.0 * n);
  const double ev = expected_vocabulary(model, n);
  const double ev2 = expected_vocabulary(model, 2.0 * n);

  std::vector<double> cov(dim * dim, 0.0);
  cov[0] = ev2 - ev;
  for (std::size_t m = 1; m <= k; ++m) {
    const double c = e_2n[m - 1] * std::ldexp(1.0, -static_cast<int>(m));
    cov[m] = c;
    cov[m * dim] = c;
  }
  for (std::size_t m = 1; m <= k; ++m) {
    for (std::size_t j = m; j <= k; ++j) {
      const double md = static_cast<double>(m), jd = static_cast<double>(j);
      const double binom = std::exp(std::lgamma(md + jd + 1.0) - std::lgamma(md + 1.0) - std::lgamma(jd + 1.0) -
                                    (md + jd) * std::log(2.0));
      double c = -binom * e_2n[m + j - 1];
      if (m == j) c += e_n[m - 1];
      cov[m * dim + j] = c;
      cov[j * dim + m] = c;
    }
  }
  std::vector<double> resid(dim);
  resid[0] = obs.v - ev;
  for (std::size_t m = 1; m <= k; ++m) resid[m] = obs.vm[m - 1] - e_n[m - 1];
  for (double r : resid) {
    if (!std::isfinite(r)) return kInf;
  }
  if (!cholesky(cov, dim)) return kInf;
  // forward substitution L y = r; chisq = |y|^2
  double chisq = 0.0;
  std::vector<double> y(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double s = resid[i];
    for (std::size_t j = 0; j < i; ++j) s -= cov[i * dim + j] * y[j];
    y[i] = s / cov[i * dim + i];
    chisq += y[i] * y[i];
  }
  return chisq;
}

Model fit(const SpectrumObservation& obs, Family family, const FitOptions& options) {
  std::size_t nonempty = 0;
  for (double v : obs.vm) nonempty += v > 0 ? 1 : 0;
  if (obs.v < 2 || nonempty < 3) {
    throw UndefinedMeasure("LNRE fit needs V >= 2 and at least 3 nonempty frequency classes");
  }
  const std::size_t classes = fit_classes(obs, family, options);

  auto objective = [&](std::span<const double> u) {
    auto model = decode(family, u);
    if (!model) return kInf;
    try {
      return multivariate_chisq(*model, obs, classes);
    } catch (const Error&) {
      return kInf;
    }
  };

  NelderMeadResult best;
  best.value = kInf;
  for (const Model& start : start_grid(obs, family)) {
    auto r = nelder_mead(objective, encode(start), options.optimizer);
    if (r.value < best.value) best = r;
  }
  if (!std::isfinite(best.value)) {
    throw FitError("LNRE fit: no start point gave a finite objective", {}, kInf);
  }
  // Restart from the incumbent until the simplex stops finding improvements.
  for (int restart = 0; restart < 8; ++restart) {
    NelderMeadOptions polish = options.optimizer;
    polish.initial_step = restart % 2 == 0 ? 0.05 : 0.01;
    auto r = nelder_mead(objective, best.x, polish);
    const bool improved = r.value < best.value * (1.0 - 1e-10) - 1e-14;
    if (r.value <= best.value) best = r;
    if (!improved && best.converged) break;
  }

  auto model = decode(family, best.x);
  if (!model || !best.converged) {
    throw FitError("LNRE " + std::string(to_string(family)) + " fit did not converge after " +
                       std::to_string(best.evaluations) + " evaluations",
                   model ? natural(*model) : std::vector<double>{}, best.diameter);
  }
  GoodnessOfFit gof;
  gof.classes = classes;
  gof.chisq = best.value;
  gof.df = static_cast<int>(classes + 1) - static_cast<int>(model->free_parameters());
  gof.p = gof.df > 0 ? special::chi_square_sf(gof.chisq, gof.df) : std::numeric_limits<double>::quiet_NaN();
  model->fitted_n = obs.n;
  model->fit = gof;
  return *model;
}

Model fit(const FrequencySpectrum& spectrum, Family family, const FitOptions& options) {
  return fit(observation_from(spectrum, options.max_classes), family, options);
}

}  // namespace corplex::lnre
