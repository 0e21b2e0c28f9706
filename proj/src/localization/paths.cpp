#include "isoloc/localization/paths.hpp"

#include <cmath>

#include "isoloc/numkit/eig.hpp"

namespace isoloc {

namespace {

Vector draw_uniform_point(const Body& body, RngStream& rng, const SamplerConfig& sampler) {
    Vector x(body.dim());
    if (body.has_exact_sampler()) {
        body.sample_exact(rng, x);
        return x;
    }
    SamplerConfig cfg = sampler;
    cfg.walk = WalkType::hit_and_run;
    cfg.chains = 1;
    const auto pts = uniform_sample(body, 1, cfg, rng);
    const auto row = pts.row(0);
    return Vector(row.begin(), row.end());
}

SamplerConfig with_walk_for(const Body& body, double t, std::span<const double> theta, SamplerConfig cfg) {
    if (t == 0.0 && max_abs(theta) == 0.0 && body.has_exact_sampler()) cfg.walk = WalkType::exact;
    return cfg;
}

}  // namespace

std::string to_string(Driver d) { return d == Driver::exact ? "exact" : "sde"; }

Vector time_grid(double horizon, double dt) {
    if (!(horizon > 0.0) || !(dt > 0.0)) throw NumericError("time_grid: horizon and dt must be positive");
    const auto steps = static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
    Vector times(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) times[k] = horizon * double(k) / double(steps);
    return times;
}

LocalizationPath tilt_path_exact(const Body& body, double horizon, double dt, RngStream& rng,
                                 const SamplerConfig& sampler) {
    const std::size_t n = body.dim();
    LocalizationPath path;
    path.driver = Driver::exact;
    path.times = time_grid(horizon, dt);
    path.x = draw_uniform_point(body, rng, sampler);
    Vector b(n, 0.0);
    path.theta.push_back(Vector(n, 0.0));
    for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
        const double h = path.times[k + 1] - path.times[k];
        Vector db = brownian_increment(n, h, rng);
        b = b + db;
        path.increments.push_back(std::move(db));
        path.theta.push_back(path.times[k + 1] * *path.x + b);
    }
    return path;
}

LocalizationPath tilt_path_sde(const Body& body, double horizon, double dt, std::size_t inner, RngStream& rng,
                               const SamplerConfig& sampler) {
    if (dt > 1e-2) throw NumericError("tilt_path_sde: dt must be <= 1e-2");
    if (inner < 1000) throw NumericError("tilt_path_sde: inner sample count must be >= 1000");
    const std::size_t n = body.dim();
    LocalizationPath path;
    path.driver = Driver::sde;
    path.times = time_grid(horizon, dt);
    Vector theta(n, 0.0);
    path.theta.push_back(theta);
    for (std::size_t k = 0; k + 1 < path.times.size(); ++k) {
        const double t = path.times[k];
        const double h = path.times[k + 1] - t;
        MeasureState state = measure_state(body, t, theta, inner, rng, sampler);
        Vector db = brownian_increment(n, h, rng);
        theta = theta + h * state.mean() + db;
        path.states.push_back(std::move(state));
        path.increments.push_back(std::move(db));
        path.theta.push_back(theta);
    }
    return path;
}

MeasureState measure_state(const Body& body, double t, std::span<const double> theta, std::size_t count,
                           RngStream& rng, const SamplerConfig& sampler) {
    MeasureState s;
    s.t = t;
    s.theta.assign(theta.begin(), theta.end());
    const auto pts = tilted_sample(body, t, theta, count, with_walk_for(body, t, theta, sampler), rng);
    s.moments = estimate_moments(pts);
    const auto slice = estimate_third_moment_slice(pts, uniform_sphere(body.dim(), rng));
    const auto d = sym_eig(slice.h);
    s.third_moment_op = std::max(std::abs(d.lambda_max()), std::abs(d.lambda_min()));
    s.third_moment_se = slice.se_scale;
    return s;
}

double estimate_log_partition(const Body& body, double t, std::span<const double> theta, std::size_t count,
                              RngStream& rng, const SamplerConfig& sampler) {
    const Vector zero(body.dim(), 0.0);
    const auto pts = uniform_sample(body, count, with_walk_for(body, 0.0, zero, sampler), rng);
    std::vector<double> logw(count);
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < count; ++i) {
        const auto x = pts.row(i);
        logw[i] = dot(theta, x) - 0.5 * t * dot(x, x);
        top = std::max(top, logw[i]);
    }
    double sum = 0.0;
    for (double l : logw) sum += std::exp(l - top);
    return top + std::log(sum / double(count));
}

double default_horizon(std::size_t n, double kappa, double c0) {
    return c0 / (kappa * kappa * std::log(double(std::max<std::size_t>(n, 2))));
}

}  // namespace isoloc
