#pragma once

#include <cstddef>

#include "isoloc/numkit/rng.hpp"

namespace isoloc {

/// Φ(t), the standard normal distribution function.
double normal_cdf(double t);
/// 1 − Φ(t), computed without cancellation for large t.
double normal_sf(double t);
double normal_pdf(double t);
/// Φ⁻¹(p) for p in (0,1): Acklam's rational approximation refined by one Halley step.
double normal_quantile(double p);

/// α_n = E|G| for G standard Gaussian in ℝⁿ, √2 Γ((n+1)/2) / Γ(n/2).
double alpha_n(std::size_t n);

/// Draw from N(mean, sd²) conditioned on [lo, hi] by inverse CDF. Falls back
/// to exponential-proposal rejection when the interval carries less than
/// 1e-14 of the Gaussian mass.
double sample_truncated_normal(double mean, double sd, double lo, double hi, RngStream& rng);

/// Density ∝ exp(rate·s) on [lo, hi], by inverse CDF.
double sample_truncated_exponential(double rate, double lo, double hi, RngStream& rng);

/// I_x(a, b), the regularized incomplete beta function.
double incomplete_beta(double a, double b, double x);
/// Q(a, x) = Γ(a, x)/Γ(a), the upper regularized incomplete gamma function.
double incomplete_gamma_upper(double a, double x);

/// log C(n, k)
double log_binomial_coefficient(std::size_t n, std::size_t k);
/// P(Bin(n, p) <= k)
double binomial_cdf(std::size_t k, std::size_t n, double p);

}  // namespace isoloc
