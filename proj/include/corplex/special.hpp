#pragma once

#include <cstddef>
#include <vector>

// Special functions used by the LNRE models and the significance tests.
namespace corplex::special {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
double gamma_p(double a, double x);
/// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

/// Upper tail of the chi-square distribution with `df` degrees of freedom.
double chi_square_sf(double x, double df);

/// Two-sided standard-normal p-value for a z score.
double normal_two_sided_p(double z);

/// log K_nu(x) for real nu and x > 0. Temme's series for x <= 2, Steed's
/// continued fraction above, then upward recurrence in the order.
double log_bessel_k(double nu, double x);

/// log K_{nu0 + i}(x) for i = 0 .. count-1, by one upward recurrence.
std::vector<double> log_bessel_k_sequence(double nu0, double x, std::size_t count);

/// Survival function of the Kolmogorov distribution, P(K > lambda).
/// Series terms below 1e-12 are dropped.
double kolmogorov_sf(double lambda);

}  // namespace corplex::special
