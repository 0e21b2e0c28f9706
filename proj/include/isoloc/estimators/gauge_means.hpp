#pragma once

#include "isoloc/estimators/types.hpp"

namespace isoloc {

/// M(K): mean of ‖θ‖_K over the uniform sphere.
ScalarEstimate M_of(const Body& body, std::size_t count, RngStream& rng);
/// M*(K) = M(K°): mean of h_K(θ) over the uniform sphere.
ScalarEstimate Mstar_of(const Body& body, std::size_t count, RngStream& rng);
/// E‖G‖_K for standard Gaussian G.
ScalarEstimate mean_gauge_gaussian(const Body& body, std::size_t count, RngStream& rng);
/// E‖X‖_K for X uniform in `domain`; batch-means se when sampled by a chain.
ScalarEstimate mean_gauge_uniform(const Body& norm_body, const Body& domain, std::size_t count, RngStream& rng,
                                  const SamplerConfig& sampler = {});
/// (E‖G‖^p)^{1/p} / E‖G‖ with a delta-method se. Requires p ≥ 1.
ScalarEstimate kahane_ratio(const Body& body, double p, std::size_t count, RngStream& rng);

/// E max|Yᵢ| for iid Yᵢ with density exp(−√2|y|)/√2 (unit variance).
ScalarEstimate mean_sup_norm_laplace(std::size_t n, std::size_t count, RngStream& rng);

/// Exact references: E‖X‖_∞ for X uniform on [−√3,√3]ⁿ is √3·n/(n+1);
/// E‖Y‖_∞ for the Laplace vector is H_n/√2; E‖G‖_∞ by quadrature of
/// ∫₀^∞ 1 − (2Φ(x) − 1)ⁿ dx.
double isotropic_cube_sup_mean(std::size_t n);
double laplace_sup_mean(std::size_t n);
double gaussian_sup_mean(std::size_t n);

}  // namespace isoloc
