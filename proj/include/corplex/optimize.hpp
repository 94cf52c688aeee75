#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace corplex {

struct NelderMeadOptions {
  /// Stop once the largest vertex distance from the best vertex falls below this.
  double diameter_tol = 1e-8;
  /// Also stop when the objective spread across the simplex is this small
  /// relative to the best value (plateaus where the diameter cannot shrink).
  double value_rel_tol = 1e-13;
  std::size_t max_evaluations = 10000;
  double initial_step = 0.25;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
  std::size_t evaluations = 0;
  double diameter = 0;
  bool converged = false;
};

using Objective = std::function<double(std::span<const double>)>;

/// Unconstrained simplex minimization. Non-finite objective values are treated
/// as +infinity, so constraints can be expressed through the parameterization
/// or by returning infinity.
NelderMeadResult nelder_mead(const Objective& f, std::vector<double> x0,
                             const NelderMeadOptions& options = {});

}  // namespace corplex
