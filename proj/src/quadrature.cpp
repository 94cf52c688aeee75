#include "corplex/quadrature.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "corplex/error.hpp"

namespace corplex {

namespace {

constexpr std::array<double, 5> kNodes = {0.1488743389816312108848260, 0.4333953941292471907992659,
                                          0.6794095682990244062343274, 0.8650633666889845107320967,
                                          0.9739065285171717200779640};
constexpr std::array<double, 5> kWeights = {0.2955242247147528701738930, 0.2692667193099963550912269,
                                            0.2190863625159820439955349, 0.1494513491505805931457763,
                                            0.0666713443086881375935688};

double gauss10(const std::function<double(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double sum = 0.0;
  for (std::size_t i = 0; i < kNodes.size(); ++i) {
    const double dx = half * kNodes[i];
    sum += kWeights[i] * (f(mid - dx) + f(mid + dx));
  }
  return sum * half;
}

struct Panel {
  double a, b, estimate;
};

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& options) {
  if (a == b) return 0.0;
  if (!(std::isfinite(a) && std::isfinite(b))) throw ArgumentError("integration bounds must be finite");
  if (b < a) return -integrate(f, b, a, options);

  const std::size_t n0 = options.initial_panels == 0 ? 1 : options.initial_panels;
  const double width = (b - a) / static_cast<double>(n0);
  std::vector<Panel> stack;
  stack.reserve(n0 * 2);
  double total = 0.0;
  double total_abs = 0.0;
  for (std::size_t i = 0; i < n0; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = i + 1 == n0 ? b : lo + width;
    const double est = gauss10(f, lo, hi);
    stack.push_back(Panel{lo, hi, est});
    total += est;
    total_abs += std::fabs(est);
  }
  if (!std::isfinite(total)) throw NumericError("integrand is not finite on the initial panels");

  // Tolerance is judged against the initial magnitude estimate.
  const double scale = std::fmax(std::fabs(total), 1e-3 * total_abs);
  const double tol = std::fmax(options.rel_tol * scale, options.abs_tol);

  double result = 0.0;
  std::size_t panels = stack.size();
  double worst_err = 0.0;
  while (!stack.empty()) {
    Panel p = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (p.a + p.b);
    const double left = gauss10(f, p.a, mid);
    const double right = gauss10(f, mid, p.b);
    const double refined = left + right;
    const double err = std::fabs(refined - p.estimate);
    const double allowed = tol * (p.b - p.a) / (b - a);
    if (err <= allowed || p.b - p.a <= 1e-14 * (b - a)) {
      result += refined;
      worst_err = std::fmax(worst_err, err);
      continue;
    }
    panels += 2;
    if (panels > options.max_panels) {
      throw NumericError("quadrature did not converge on [" + std::to_string(a) + ", " +
                         std::to_string(b) + "]: panel budget exhausted near x=" + std::to_string(mid) +
                         ", local error " + std::to_string(err) + " vs allowed " + std::to_string(allowed));
    }
    stack.push_back(Panel{p.a, mid, left});
    stack.push_back(Panel{mid, p.b, right});
  }
  if (!std::isfinite(result)) throw NumericError("quadrature produced a non-finite value");
  return result;
}

}  // namespace corplex
