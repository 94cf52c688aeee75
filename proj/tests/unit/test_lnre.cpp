#include <cmath>
#include <vector>

#include "corplex/error.hpp"
#include "corplex/lnre.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace corplex;
using namespace corplex::lnre;

namespace {

std::vector<Model> sample_models() {
  return {Model::zipf_mandelbrot(0.4, 0.05),
          Model::zipf_mandelbrot(0.85, 0.002),
          Model::finite_zipf_mandelbrot(0.6, 1e-7, 0.03),
          Model::finite_zipf_mandelbrot(0.3, 1e-5, 0.2),
          Model::gigp(-0.5, 0.01, 0.05),
          Model::gigp(-0.85, 0.002, 0.2),
          Model::gigp(-0.1, 0.1, 0.001)};
}

double poisson_term(double x, unsigned m) {
  return std::exp(static_cast<double>(m) * std::log(x) - x - std::lgamma(m + 1.0));
}

}  // namespace

TEST_SUITE("lnre") {
  TEST_CASE("family names") {
    CHECK(parse_family("GIGP") == Family::gigp);
    CHECK(parse_family("fzm") == Family::fzm);
    CHECK(to_string(Family::zm) == "zm");
    CHECK_THROWS_AS(parse_family("lognormal"), ArgumentError);
  }

  TEST_CASE("parameter validation") {
    CHECK_THROWS_AS(Model::zipf_mandelbrot(1.0, 0.1), ArgumentError);
    CHECK_THROWS_AS(Model::zipf_mandelbrot(0.5, 0.0), ArgumentError);
    CHECK_THROWS_AS(Model::finite_zipf_mandelbrot(0.5, 0.1, 0.1), ArgumentError);
    CHECK_THROWS_AS(Model::gigp(-0.5, 0.0, 1.0), ArgumentError);
    CHECK(Model::gigp(-0.5, 0.1, 0.2).free_parameters() == 3);
    CHECK(Model::zipf_mandelbrot(0.5, 0.1).free_parameters() == 2);
  }

  TEST_CASE("densities carry unit probability mass") {
    for (const auto& m : sample_models()) {
      CAPTURE(m.named_params()[0].second);
      CHECK(density_expectation(m, [](double pi) { return pi; }) == doctest::Approx(1.0).epsilon(1e-7));
    }
  }

  TEST_CASE("population size matches the integral of g") {
    for (const auto& m : sample_models()) {
      if (m.family() == Family::zm) {
        CHECK(std::isinf(m.population_size()));
        continue;
      }
      const double s = density_expectation(m, [](double) { return 1.0; });
      CHECK(m.population_size() == doctest::Approx(s).epsilon(1e-6));
    }
  }

  TEST_CASE("closed forms agree with quadrature") {
    for (const auto& model : sample_models()) {
      for (double n : {100.0, 1e4, 1e6}) {
        CAPTURE(n);
        CAPTURE(to_string(model.family()));
        const double ev = density_expectation(model, [n](double pi) { return -std::expm1(-n * pi); });
        CHECK(expected_vocabulary(model, n) == doctest::Approx(ev).epsilon(1e-6));
        const auto spec = expected_spectrum_range(model, 6, n);
        for (unsigned m = 1; m <= 6; ++m) {
          const double q = density_expectation(model, [n, m](double pi) { return poisson_term(n * pi, m); });
          CHECK(spec[m - 1] == doctest::Approx(q).epsilon(1e-6));
          CHECK(expected_spectrum(model, m, n) == doctest::Approx(spec[m - 1]).epsilon(1e-12));
        }
      }
    }
  }

  TEST_CASE("ZM vocabulary matches an independent Boost quadrature") {
    for (double a : {0.3, 0.6, 0.9}) {
      for (double n : {1e3, 1e5}) {
        CHECK(expected_vocabulary(Model::zipf_mandelbrot(a, 0.1), n) ==
              doctest::Approx(oracle::zm_expected_types(a, 0.1, n)).epsilon(1e-9));
      }
    }
  }

  TEST_CASE("token mass is conserved") {
    for (const auto& model : sample_models()) {
      const double n = 5e4;
      const auto spec = expected_spectrum_range(model, 200000, n);
      double mass = 0;
      for (std::size_t m = 0; m < spec.size(); ++m) mass += static_cast<double>(m + 1) * spec[m];
      CHECK(mass == doctest::Approx(n).epsilon(5e-3));
    }
  }

  TEST_CASE("variances are positive and follow the Poisson identities") {
    auto model = Model::gigp(-0.6, 0.01, 0.05);
    const double n = 2e4;
    CHECK(variance_vocabulary(model, n) == doctest::Approx(expected_vocabulary(model, 2 * n) - expected_vocabulary(model, n)));
    const double v1 = variance_spectrum(model, 1, n);
    CHECK(v1 > 0);
    CHECK(v1 == doctest::Approx(expected_spectrum(model, 1, n) - 0.5 * expected_spectrum(model, 2, 2 * n)));
  }

  TEST_CASE("expected growth splits at the fitted size") {
    auto model = Model::zipf_mandelbrot(0.5, 0.01);
    std::vector<double> cps{100, 200, 300};
    CHECK_THROWS_AS(extrapolate_growth(model, cps), ArgumentError);
    model.fitted_n = 200;
    auto g = extrapolate_growth(model, cps);
    CHECK(g.interpolated.checkpoints.size() == 2);
    CHECK(g.extrapolated.checkpoints.size() == 1);
    CHECK(g.extrapolated.checkpoints[0].v == doctest::Approx(expected_vocabulary(model, 300)));
    std::vector<double> bad{100, 100};
    CHECK_THROWS_AS(extrapolate_growth(model, bad), ArgumentError);
  }

  TEST_CASE("fit rejects tiny spectra") {
    FrequencySpectrum sp(3, 2, {{1, 1}, {2, 1}});
    CHECK_THROWS_AS(fit(sp, Family::zm), UndefinedMeasure);
  }

  TEST_CASE("fit records goodness of fit") {
    auto truth = Model::gigp(-0.55, 0.004, 0.08);
    auto obs = expected_observation(truth, 2e4);
    auto m = fit(obs, Family::gigp);
    REQUIRE(m.fit);
    CHECK(m.fitted_n == 2e4);
    CHECK(m.fit->df == static_cast<int>(m.fit->classes) + 1 - 3);
    CHECK(m.fit->chisq < 1e-3);
    CHECK(m.fit->p > 0.99);
  }

  TEST_CASE("growth Z test") {
    auto model = Model::zipf_mandelbrot(0.6, 0.05);
    FrequencySpectrum a(1000, 351, {{1, 300}, {2, 50}, {600, 1}});
    auto self = compare_growth_z(model, a, model, a);
    CHECK(self.z == 0.0);
    CHECK(self.p == doctest::Approx(1.0));
    FrequencySpectrum b(1000, 251, {{1, 200}, {2, 50}, {700, 1}});
    auto ab = compare_growth_z(model, a, model, b);
    CHECK(ab.z > 0);
    CHECK(ab.growth_a == doctest::Approx(0.3));
    CHECK(ab.growth_b == doctest::Approx(0.2));
  }
}
