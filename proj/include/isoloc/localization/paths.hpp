#pragma once

#include <optional>

#include "isoloc/sampling/moments.hpp"

namespace isoloc {

/// Point (t, θ) of the tilt process with an optional estimate of
/// Λ_t(θ) = log ∫ exp(θ·x − t|x|²/2) dμ(x).
struct TiltState {
    double t = 0.0;
    Vector theta;
    std::optional<double> log_partition;
};

/// Barycenter and covariance of μ_{t,θ} ∝ exp(θ·x − t|x|²/2) dμ(x).
struct MeasureState {
    double t = 0.0;
    Vector theta;
    MomentEstimate moments;
    /// ‖Ĥ_u‖_op for one random unit u, with its standard error scale.
    double third_moment_op = 0.0;
    double third_moment_se = 0.0;

    const Vector& mean() const { return moments.mean; }
    const SymMatrix& cov() const { return moments.cov; }
};

enum class Driver {
    /// θ_t = tX + B_t with X drawn once from μ.
    exact,
    /// Euler–Maruyama on dθ = dB + a(t, θ) dt with a sampled drift.
    sde,
};

std::string to_string(Driver d);

/// Uniform grid 0 = t₀ < … < t_K = T with θ_k and the Brownian increments
/// ΔB_k = B_{t_{k+1}} − B_{t_k} used to build it.
struct LocalizationPath {
    Driver driver = Driver::exact;
    Vector times;
    std::vector<Vector> theta;
    std::vector<Vector> increments;
    /// Exact driver only.
    std::optional<Vector> x;
    /// SDE driver only: the measured state at t_0 … t_{K−1} that set the drift.
    std::vector<MeasureState> states;

    std::size_t steps() const { return increments.size(); }
    double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

/// Grid of ⌈T/Δt⌉ equal steps ending exactly at T.
Vector time_grid(double horizon, double dt);

/// X is drawn with the body's exact sampler when it has one, otherwise by
/// hit-and-run with the configured burn-in.
LocalizationPath tilt_path_exact(const Body& body, double horizon, double dt, RngStream& rng,
                                 const SamplerConfig& sampler = {});
/// Requires Δt ≤ 1e-2 and inner ≥ 1000; throws NumericError otherwise.
LocalizationPath tilt_path_sde(const Body& body, double horizon, double dt, std::size_t inner, RngStream& rng,
                               const SamplerConfig& sampler = {});

/// Zero tilt uses the body's exact sampler when available.
MeasureState measure_state(const Body& body, double t, std::span<const double> theta, std::size_t count,
                           RngStream& rng, const SamplerConfig& sampler = {});

/// Importance estimate of Λ_t(θ) from uniform samples, by log-sum-exp.
double estimate_log_partition(const Body& body, double t, std::span<const double> theta, std::size_t count,
                              RngStream& rng, const SamplerConfig& sampler = {});

/// c₀/(κ² log n): the horizon on which the covariance is expected to stay
/// in [½, 2], with surrogate κ.
double default_horizon(std::size_t n, double kappa = 2.0, double c0 = 1.0 / 32.0);

}  // namespace isoloc
