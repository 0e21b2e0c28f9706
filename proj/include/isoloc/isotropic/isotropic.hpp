#pragma once

#include <optional>

#include "isoloc/bodies/constructors.hpp"
#include "isoloc/sampling/moments.hpp"

namespace isoloc {

/// Inner and outer radius checks of an isotropic body against
/// √((n+2)/n) and √(n(n+2)).
struct SandwichReport {
    std::size_t n = 0;
    std::size_t directions = 0;
    /// Smallest support value over the sampled directions.
    double min_support = 0.0;
    /// Exact inradius when the body has facets.
    std::optional<double> exact_inradius;
    double inner_bound = 0.0;
    RadiusBound radius;
    double outer_bound = 0.0;
    double slack = 0.0;
    bool inner_ok = false;
    bool outer_ok = false;

    bool passed() const { return inner_ok && outer_ok; }
};

struct IsotropizationReport {
    /// The isotropic body is map·K + shift.
    Matrix map;
    Vector shift;
    double residual_mean = 0.0;  // |â|
    double residual_cov = 0.0;   // ‖Â − Id‖_op
    std::size_t samples = 0;     // per iteration
    std::size_t iterations = 0;
    std::optional<SandwichReport> sandwich;
};

struct IsotropizeConfig {
    std::size_t samples = 200000;
    double mean_tol = 0.02;
    double cov_tol = 0.05;
    std::size_t max_iters = 5;
    SamplerConfig sampler;
    /// Use the body's exact sampler when it has one.
    bool prefer_exact = false;
    /// Directions for the sandwich check; 0 skips it.
    std::size_t sandwich_directions = 2000;
};

struct IsotropicBody {
    BodyPtr body;
    IsotropizationReport report;
};

/// Repeats x ↦ Â^{−1/2}(x − â) on fresh samples until |â| and ‖Â − Id‖_op
/// are within tolerance. The map is rebuilt from the input body each round.
/// Throws NumericError when max_iters is exhausted, when λ_min(Â) < 1e-8, or
/// when the sandwich check rejects the result.
IsotropicBody isotropize(const BodyPtr& body, const IsotropizeConfig& cfg, RngStream& rng);

/// Slack is 2·tol·√n with tol the covariance tolerance.
SandwichReport verify_sandwich(const Body& body, std::size_t directions, double tol, RngStream& rng);

/// Closed-form isotropic bodies: cube [−√3,√3]ⁿ, ball of radius √(n+2),
/// ℓ¹ ball of radius √((n+1)(n+2)/2), regular simplex of circumradius
/// √(n(n+2)).
BodyPtr named_isotropic(const std::string& name, std::size_t n, Representation rep = Representation::automatic);
/// Scale factor taking the unit-scale named body to isotropic position.
double isotropic_scale(const std::string& name, std::size_t n);

}  // namespace isoloc
