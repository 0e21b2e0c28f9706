#include "isoloc/sampling/moments.hpp"

#include <cmath>

namespace isoloc {

namespace {

constexpr std::size_t kBatches = 32;

// Batch-means standard error of the mean of values(i), i < N.
template <class F>
double batch_se(std::size_t count, F&& value) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = value(i);
    return batch_mean_se(v, kBatches).se;
}

}  // namespace

double MomentEstimate::cov_se_max() const { return max_abs(cov_se); }

MomentEstimate estimate_moments(const PointCloud& points) {
    const std::size_t count = points.rows(), n = points.cols();
    if (count < 2) throw NumericError("estimate_moments: need at least 2 points");
    MomentEstimate m;
    m.count = count;
    m.mean.assign(n, 0.0);
    for (std::size_t i = 0; i < count; ++i) axpy(1.0, points.row(i), m.mean);
    for (double& v : m.mean) v /= count;
    m.cov = SymMatrix(n);
    Matrix acc(n, n);
    for (std::size_t i = 0; i < count; ++i) {
        const auto p = points.row(i);
        for (std::size_t a = 0; a < n; ++a) {
            const double da = p[a] - m.mean[a];
            for (std::size_t b = a; b < n; ++b) acc(a, b) += da * (p[b] - m.mean[b]);
        }
    }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) m.cov.set(a, b, acc(a, b) / (count - 1));
    m.mean_se.assign(n, 0.0);
    m.cov_se = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        m.mean_se[a] = batch_se(count, [&](std::size_t i) { return points(i, a); });
        for (std::size_t b = a; b < n; ++b) {
            const double se = batch_se(count, [&](std::size_t i) {
                return (points(i, a) - m.mean[a]) * (points(i, b) - m.mean[b]);
            });
            m.cov_se(a, b) = m.cov_se(b, a) = se;
        }
    }
    return m;
}

ThirdMomentSlice estimate_third_moment_slice(const PointCloud& points, std::span<const double> theta) {
    const std::size_t count = points.rows(), n = points.cols();
    check_same_dim(theta.size(), n, "third moment slice");
    if (count < 2) throw NumericError("third moment slice: need at least 2 points");
    Vector mean(n, 0.0);
    for (std::size_t i = 0; i < count; ++i) axpy(1.0, points.row(i), mean);
    for (double& v : mean) v /= count;
    Matrix centred(count, n);
    Vector proj(count);
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t a = 0; a < n; ++a) centred(i, a) = points(i, a) - mean[a];
        proj[i] = dot(centred.row(i), theta);
    }
    ThirdMomentSlice s;
    s.theta.assign(theta.begin(), theta.end());
    s.h = SymMatrix(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            auto term = [&](std::size_t i) { return proj[i] * centred(i, a) * centred(i, b); };
            double sum = 0.0;
            for (std::size_t i = 0; i < count; ++i) sum += term(i);
            s.h.set(a, b, sum / count);
            s.se_scale = std::max(s.se_scale, batch_se(count, term));
        }
    }
    return s;
}

MeanSe projected_variance(const PointCloud& points, std::span<const double> mean, std::span<const double> u) {
    std::vector<double> sq(points.rows());
    for (std::size_t i = 0; i < points.rows(); ++i) {
        double p = 0.0;
        for (std::size_t a = 0; a < points.cols(); ++a) p += (points(i, a) - mean[a]) * u[a];
        sq[i] = p * p;
    }
    return batch_mean_se(sq, kBatches);
}

}  // namespace isoloc
