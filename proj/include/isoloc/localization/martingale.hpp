#pragma once

#include <functional>

#include "isoloc/localization/trace.hpp"

namespace isoloc {

struct TestFunction {
    std::string name;
    std::function<double(std::span<const double>)> f;
};

TestFunction coordinate_function(std::size_t i);
TestFunction coordinate_square_function(std::size_t i);
TestFunction gauge_function(BodyPtr body);

struct DeviationRow {
    std::string name;
    double path_mean = 0.0;  // mean over paths of ∫f dμ̂_t
    double path_se = 0.0;
    double reference = 0.0;  // ∫f dμ̂
    double reference_se = 0.0;
    double deviation = 0.0;
    double combined_se = 0.0;
    bool passed = false;  // |deviation| ≤ 3·combined_se
};

struct MartingaleReport {
    double t = 0.0;
    std::size_t paths = 0;
    std::size_t inner = 0;
    std::vector<DeviationRow> rows;

    bool passed() const;
};

/// E_paths ∫f dμ_t against ∫f dμ, with θ_t = tX + B_t. The reference uses
/// `reference` uniform samples (default paths·inner).
MartingaleReport martingale_check(const Body& body, double t, const std::vector<TestFunction>& functions,
                                  std::size_t paths, std::size_t inner, RngStream& rng,
                                  const SamplerConfig& sampler = {}, std::size_t reference = 0);

/// v_k = Σ_{j<k} f(Â_j) ΔW_j with f(u) = min{max{u, ½}, 2}, left-point rule.
struct ClippedPath {
    Vector times;
    std::vector<Vector> values;
    /// [v]_T = Σ f(Â_j)² Δt.
    SymMatrix quadratic_variation;

    const Vector& endpoint() const { return values.back(); }
};

ClippedPath clipped_martingale(const Vector& times, const std::vector<Vector>& increments,
                               const std::vector<SymMatrix>& covariances);
ClippedPath clipped_martingale(const LocalizationPath& path, const CovarianceTrace& trace);

/// Z₁, Z₂ with √r·(Z₁ + Z₂)/2 = M_T.
struct MaureyPair {
    Vector z1;
    Vector z2;
    double r = 0.0;
};

/// Y± = M_T ± (r·Id − [M]_T)^{1/2} G, Zᵢ = Y/√r. Eigenvalues of r·Id − [M]_T
/// down to −1e-10·max(1, r) are clipped to zero; below that throws NumericError.
MaureyPair maurey_decompose(std::span<const double> endpoint, const SymMatrix& quadratic_variation, double r,
                            RngStream& rng);

struct ConvexOrderReport {
    double martingale_mean = 0.0;
    double martingale_se = 0.0;
    double gaussian_mean = 0.0;
    double gaussian_se = 0.0;
    bool passed = false;  // martingale_mean ≥ gaussian_mean − 3·combined se
};

/// E F(M_T) against E F(√r B_T), the Gaussian side from `gaussian` draws
/// (default: the ensemble size).
ConvexOrderReport convex_order_check(const std::function<double(std::span<const double>)>& functional,
                                     const std::vector<Vector>& endpoints, double r, double horizon, RngStream& rng,
                                     std::size_t gaussian = 0);

struct EndpointReport {
    double horizon = 0.0;
    std::size_t paths = 0;
    std::vector<double> p_values;  // one per direction
    std::size_t directions_passed = 0;
    Vector mean;
    Vector variance;

    bool passed() const { return directions_passed + 1 >= p_values.size(); }
};

/// Law of a_T = E[X | θ_T] against uniform samples on 5 random directions.
EndpointReport endpoint_law_check(const Body& body, double horizon, std::size_t paths, std::size_t inner,
                                  RngStream& rng, const SamplerConfig& sampler = {});

struct FreedmanRow {
    double a = 0.0;
    double frequency = 0.0;
    double se = 0.0;
    double bound = 0.0;       // exp(−a²/(2b))
    double reflection = 0.0;  // 2(1 − Φ(a/√b)), exact for Brownian motion run to QV b
    bool passed = false;      // frequency ≤ bound + 3·se
};

struct FreedmanReport {
    double qv_cap = 0.0;
    std::size_t paths = 0;
    bool adaptive = false;
    std::vector<FreedmanRow> rows;

    bool passed() const;
};

/// Scalar martingales dM = σ dB on [0, 1] with QV exactly b (σ = √b) or,
/// when `adaptive`, σ = √b while M < 0 and √b/2 otherwise so [M] ≤ b.
/// Running maxima are exact through Brownian-bridge sampling on each step.
FreedmanReport freedman_check(double qv_cap, const std::vector<double>& levels, std::size_t paths,
                              std::size_t steps, RngStream& rng, bool adaptive = false);

/// Regression through the origin of Δa_k on Â_k ΔW_k, pooled over coordinates,
/// steps and paths; the slope should be 1.
MeanSe barycenter_regression(const std::vector<LocalizationPath>& paths, const std::vector<CovarianceTrace>& traces);

}  // namespace isoloc
