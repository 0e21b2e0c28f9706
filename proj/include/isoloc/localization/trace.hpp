#pragma once

#include <filesystem>

#include "isoloc/localization/paths.hpp"

namespace isoloc {

struct TraceStep {
    double t = 0.0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
    /// Proxies at β = 2 log n.
    double f_beta = 0.0;
    double g_beta = 0.0;
    /// Proxies at β = 8 log n.
    double f_beta_sharp = 0.0;
    double g_beta_sharp = 0.0;
    /// ‖Ĥ_θ‖_op for one random unit θ, against its standard error.
    double third_moment_op = 0.0;
    double se_scale = 0.0;
    bool exited_window = false;
};

/// Spectral history of Â_t along one path. Eigenvalue noise below zero is
/// clipped before the proxies are taken.
struct CovarianceTrace {
    std::size_t n = 0;
    double beta = 0.0;
    double beta_sharp = 0.0;
    std::vector<TraceStep> steps;
    /// Measured barycenter and covariance at every grid time.
    std::vector<MeasureState> states;
    /// First step whose spectrum leaves [½ − 3se, 2 + 3se].
    std::optional<std::size_t> first_exit;

    bool stayed_in_window() const { return !first_exit; }
};

/// 2·log n, with n floored at 2 so that β > 0.
double proxy_beta(std::size_t n);

/// Measures every grid point of the path; SDE paths reuse their drift states.
CovarianceTrace covariance_trace(const Body& body, const LocalizationPath& path, std::size_t inner, RngStream& rng,
                                 const SamplerConfig& sampler = {});

/// Columns t, lambda_min, lambda_max, f_beta, g_beta, se_scale, exited_window.
void write_trace_csv(const std::filesystem::path& path, const CovarianceTrace& trace);

/// Innovation increments ΔW_k = Δθ_k − â_k Δt, the noise for which
/// da = A dW. For SDE paths these are the stored increments.
std::vector<Vector> innovations(const LocalizationPath& path, const CovarianceTrace& trace);

}  // namespace isoloc
