#pragma once

#include <filesystem>
#include <optional>

#include "isoloc/bodies/body.hpp"

namespace isoloc {

enum class WalkType {
    /// Random-direction hit-and-run with exact one-dimensional conditionals.
    hit_and_run,
    /// The body's own exact uniform sampler; only valid for zero tilt.
    exact,
};

struct SamplerConfig {
    /// Steps discarded before the first sample; default 100·n.
    std::optional<std::size_t> burn_in;
    /// Steps between retained samples; default n.
    std::optional<std::size_t> thinning;
    WalkType walk = WalkType::hit_and_run;
    /// Independent chains pooled in order; each runs on rng.spawn(chain).
    std::size_t chains = 1;
    /// Start point of every chain; default origin.
    std::optional<Vector> start;

    std::size_t burn_in_for(std::size_t n) const { return burn_in.value_or(100 * n); }
    std::size_t thinning_for(std::size_t n) const { return thinning.value_or(n); }
};

/// Row i holds point i.
using PointCloud = Matrix;

/// N points approximately uniform on the body.
PointCloud uniform_sample(const Body& body, std::size_t count, const SamplerConfig& cfg, RngStream& rng);

/// N points from the density ∝ exp(θ·x − t|x|²/2) restricted to the body.
/// Along each chord the conditional is a truncated Gaussian (t > 0) or a
/// truncated exponential (t = 0) and is sampled exactly.
PointCloud tilted_sample(const Body& body, double t, std::span<const double> theta, std::size_t count,
                         const SamplerConfig& cfg, RngStream& rng);

/// One hit-and-run step from x (in place) for the tilted density.
void hit_and_run_step(const Body& body, double t, std::span<const double> theta, std::span<double> x,
                      RngStream& rng);

/// One row per point, comma separated, with a header x0,...,x{n-1}.
void write_points_csv(const std::filesystem::path& path, const PointCloud& points);

}  // namespace isoloc
