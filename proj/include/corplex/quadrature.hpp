#pragma once

#include <cstddef>
#include <functional>

namespace corplex {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  /// Equal-width panels evaluated before adaptive refinement; sharp peaks
  /// narrower than a panel can be missed, so keep this generous.
  std::size_t initial_panels = 64;
  std::size_t max_panels = 200000;
};

/// Adaptive 10-point Gauss-Legendre quadrature of f over [a, b]. A panel is
/// accepted when its two halves agree with it to the share of the tolerance
/// proportional to its width. Throws NumericError if the panel budget runs out.
/// Stateless; safe to call concurrently.
double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options = {});

}  // namespace corplex
