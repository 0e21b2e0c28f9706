#pragma once

#include "isoloc/numkit/stats.hpp"
#include "isoloc/sampling/hit_and_run.hpp"

namespace isoloc {

/// Barycenter and covariance of a point cloud with batch-means standard
/// errors (32 batches, so correlated chain output is handled).
struct MomentEstimate {
    std::size_t count = 0;
    Vector mean;
    SymMatrix cov;  // 1/(N−1) normalization
    Vector mean_se;
    Matrix cov_se;

    /// Largest entry of cov_se.
    double cov_se_max() const;
};

MomentEstimate estimate_moments(const PointCloud& points);

/// H_θ = E[⟨X − a, θ⟩ (X − a) ⊗ (X − a)] with a the sample mean.
struct ThirdMomentSlice {
    Vector theta;
    SymMatrix h;
    /// Largest batch-means standard error over the entries.
    double se_scale = 0.0;
};

ThirdMomentSlice estimate_third_moment_slice(const PointCloud& points, std::span<const double> theta);

/// Variance of the projection onto u with a batch-means standard error.
MeanSe projected_variance(const PointCloud& points, std::span<const double> mean, std::span<const double> u);

}  // namespace isoloc
