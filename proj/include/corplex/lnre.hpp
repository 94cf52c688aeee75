#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "corplex/diversity.hpp"
#include "corplex/optimize.hpp"
#include "corplex/quadrature.hpp"

// LNRE (large number of rare events) models: parametric type-probability
// densities g(pi) whose Poisson mixtures give expected frequency spectra and
// vocabulary growth curves.
//
//   ZM    g(pi) = C pi^(-a-1) on (0, B],       C = (1-a) / B^(1-a)
//   fZM   g(pi) = C pi^(-a-1) on [A, B],       C = (1-a) / (B^(1-a) - A^(1-a))
//   GIGP  g(pi) = pi^(g-1) exp(-pi/c - b^2 c / (4 pi)) / (2 (bc/2)^(g+1) K_{g+1}(b))
//
// Every density satisfies the mass constraint  int pi g(pi) dpi = 1.
namespace corplex::lnre {

enum class Family { zm, fzm, gigp };

std::string_view to_string(Family family);
/// Accepts "zm", "fzm", "gigp" (case-insensitive). Throws ArgumentError.
Family parse_family(std::string_view name);

struct ZmParams {
  double alpha;
  double upper;  // B
};
struct FzmParams {
  double alpha;
  double lower;  // A
  double upper;  // B
};
struct GigpParams {
  double gamma;
  double b;
  double c;
};

using Params = std::variant<ZmParams, FzmParams, GigpParams>;

struct GoodnessOfFit {
  double chisq = 0;
  int df = 0;
  double p = 1;
  /// Spectrum classes V(1..classes) used next to V.
  std::size_t classes = 0;
};

class Model {
 public:
  /// Throws ArgumentError on out-of-range parameters.
  static Model zipf_mandelbrot(double alpha, double upper);
  static Model finite_zipf_mandelbrot(double alpha, double lower, double upper);
  static Model gigp(double gamma, double b, double c);
  static Model from_params(const Params& params);

  Family family() const noexcept;
  const Params& params() const noexcept { return params_; }
  /// (name, value) pairs in a fixed order, as used by the JSON exchange format.
  std::vector<std::pair<std::string, double>> named_params() const;
  std::size_t free_parameters() const noexcept;

  /// Expected number of types in the population; +infinity for ZM.
  double population_size() const;

  /// g(pi).
  double type_density(double pi) const;

  /// Sample size the model was fitted at, and the fit record.
  std::optional<double> fitted_n;
  std::optional<GoodnessOfFit> fit;

 private:
  explicit Model(Params p) : params_(p) {}
  Params params_;
};

/// E[V(N)] = int (1 - e^(-N pi)) g(pi) dpi.
double expected_vocabulary(const Model& model, double n);

/// E[V(m,N)] = int (N pi)^m e^(-N pi) / m! g(pi) dpi.
double expected_spectrum(const Model& model, std::uint64_t m, double n);

/// E[V(m,N)] for m = 1 .. m_max (index 0 holds m = 1).
std::vector<double> expected_spectrum_range(const Model& model, std::uint64_t m_max, double n);

/// Var[V(N)] = E[V(2N)] - E[V(N)].
double variance_vocabulary(const Model& model, double n);

/// Var[V(m,N)] = E[V(m,N)] - C(2m,m) 4^-m E[V(2m,2N)].
double variance_spectrum(const Model& model, std::uint64_t m, double n);

/// int f(pi) g(pi) dpi by adaptive quadrature on log(pi). Independent of the
/// closed forms above; used to cross-check them and for arbitrary integrands.
double density_expectation(const Model& model, const std::function<double(double)>& f,
                           const QuadratureOptions& options = {});

/// Observed quantities a fit is matched against. `vm[i]` holds V(i+1, N).
/// Values may be non-integral (e.g. an expected spectrum).
struct SpectrumObservation {
  double n = 0;
  double v = 0;
  std::vector<double> vm;
};

/// V(1..15) as available; classes past the spectrum's maximum are zero.
SpectrumObservation observation_from(const FrequencySpectrum& spectrum, std::size_t max_classes = 15);
SpectrumObservation expected_observation(const Model& model, double n, std::size_t max_classes = 15);

struct FitOptions {
  std::size_t max_classes = 15;
  /// Classes are used up to (not including) the first one below this count;
  /// V carries the lumped remainder.
  double min_class_count = 5;
  NelderMeadOptions optimizer{};
};

/// Number of spectrum classes a fit of `family` will use for `obs`.
std::size_t fit_classes(const SpectrumObservation& obs, Family family, const FitOptions& options = {});

/// Multivariate chi-square of (V, V(1..classes)) against the model's Poisson
/// covariance matrix at the observed N.
double multivariate_chisq(const Model& model, const SpectrumObservation& obs, std::size_t classes);

/// Minimizes the multivariate chi-square from a deterministic 5-point start
/// grid. Throws UndefinedMeasure when the spectrum is too small and FitError
/// when the simplex search does not converge.
Model fit(const SpectrumObservation& obs, Family family, const FitOptions& options = {});
Model fit(const FrequencySpectrum& spectrum, Family family, const FitOptions& options = {});

struct ExpectedGrowth {
  GrowthCurve interpolated;
  GrowthCurve extrapolated;
};

/// E[V], E[V(1)], E[V(2)] at each checkpoint, split at the fitted N.
ExpectedGrowth extrapolate_growth(const Model& model, std::span<const double> checkpoints);

struct GrowthZTest {
  double z = 0;
  double p = 1;
  double growth_a = 0;
  double growth_b = 0;
};

/// Z = (G_A - G_B) / sqrt(Var[V(1,N_A)]/N_A^2 + Var[V(1,N_B)]/N_B^2), with
/// G = V(1,N)/N and the variances taken from each corpus's fitted model.
GrowthZTest compare_growth_z(const Model& model_a, const FrequencySpectrum& spectrum_a,
                             const Model& model_b, const FrequencySpectrum& spectrum_b);

}  // namespace corplex::lnre
