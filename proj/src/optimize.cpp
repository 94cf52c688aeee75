#include "corplex/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace corplex {

namespace {

double sanitize(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

}  // namespace

NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  NelderMeadResult result;
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return sanitize(f(std::span<const double>(x)));
  };

  std::vector<std::vector<double>> simplex(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
  std::vector<double> values(n + 1);
  for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out) {
    // centroid + t * (centroid - worst)
    const auto& worst = simplex[order[n]];
    for (std::size_t j = 0; j < n; ++j) out[j] = centroid[j] + t * (centroid[j] - worst[j]);
  };
  auto diameter = [&] {
    double d = 0;
    const auto& best = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      double s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        const double dj = simplex[order[i]][j] - best[j];
        s += dj * dj;
      }
      d = std::max(d, std::sqrt(s));
    }
    return d;
  };

  bool converged = false;
  double diam = 0;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    diam = diameter();
    const double best = values[order[0]];
    const double worst = values[order[n]];
    if (diam < options.diameter_tol) {
      converged = true;
      break;
    }
    if (std::isfinite(worst) && worst - best <= options.value_rel_tol * std::fabs(best) + 1e-300) {
      converged = true;
      break;
    }
    if (evals >= options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[order[i]][j];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    point(1.0, trial);
    const double fr = eval(trial);
    const std::size_t w = order[n];
    if (fr < values[order[0]]) {
      point(2.0, trial2);
      const double fe = eval(trial2);
      if (fe < fr) {
        simplex[w] = trial2;
        values[w] = fe;
      } else {
        simplex[w] = trial;
        values[w] = fr;
      }
      continue;
    }
    if (fr < values[order[n - 1]]) {
      simplex[w] = trial;
      values[w] = fr;
      continue;
    }
    // contraction, outside if the reflection improved on the worst point
    const bool outside = fr < values[w];
    point(outside ? 0.5 : -0.5, trial2);
    const double fc = eval(trial2);
    if (fc < (outside ? fr : values[w])) {
      simplex[w] = trial2;
      values[w] = fc;
      continue;
    }
    // shrink toward the best vertex
    const auto best_x = simplex[order[0]];
    for (std::size_t i = 1; i <= n; ++i) {
      auto& v = simplex[order[i]];
      for (std::size_t j = 0; j < n; ++j) v[j] = best_x[j] + 0.5 * (v[j] - best_x[j]);
      values[order[i]] = eval(v);
    }
  }

  result.x = simplex[order[0]];
  result.value = values[order[0]];
  result.evaluations = evals;
  result.diameter = diam;
  result.converged = converged;
  return result;
}

}  // namespace corplex
