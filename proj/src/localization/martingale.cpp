#include "isoloc/localization/martingale.hpp"

#include <algorithm>
#include <cmath>

#include "isoloc/numkit/eig.hpp"
#include "isoloc/numkit/parallel.hpp"
#include "isoloc/numkit/special.hpp"

namespace isoloc {

namespace {

constexpr std::size_t kEndpointDirections = 5;

SamplerConfig zero_tilt_config(const Body& body, SamplerConfig cfg) {
    if (body.has_exact_sampler()) cfg.walk = WalkType::exact;
    return cfg;
}

double combined(double a, double b) { return std::sqrt(a * a + b * b); }

}  // namespace

TestFunction coordinate_function(std::size_t i) {
    return {"x" + std::to_string(i), [i](std::span<const double> x) { return x[i]; }};
}

TestFunction coordinate_square_function(std::size_t i) {
    return {"x" + std::to_string(i) + "^2", [i](std::span<const double> x) { return x[i] * x[i]; }};
}

TestFunction gauge_function(BodyPtr body) {
    return {"gauge", [body = std::move(body)](std::span<const double> x) { return body->gauge(x); }};
}

bool MartingaleReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const DeviationRow& r) { return r.passed; });
}

MartingaleReport martingale_check(const Body& body, double t, const std::vector<TestFunction>& functions,
                                  std::size_t paths, std::size_t inner, RngStream& rng, const SamplerConfig& sampler,
                                  std::size_t reference) {
    if (paths < 2) throw NumericError("martingale_check: need at least 2 paths");
    const std::size_t n = body.dim();
    const std::size_t m = functions.size();
    std::vector<std::vector<double>> per_path(m, std::vector<double>(paths));
    parallel_for(paths, [&](std::size_t p) {
        RngStream local = rng.spawn(p);
        Vector x(n);
        if (body.has_exact_sampler()) {
            body.sample_exact(local, x);
        } else {
            SamplerConfig one = sampler;
            one.walk = WalkType::hit_and_run;
            const auto row = uniform_sample(body, 1, one, local).row(0);
            x.assign(row.begin(), row.end());
        }
        const Vector theta = t * x + std::sqrt(t) * gaussian_vector(n, local);
        SamplerConfig cfg = sampler;
        cfg.chains = 1;
        if (t == 0.0) cfg = zero_tilt_config(body, cfg);
        const auto pts = tilted_sample(body, t, theta, inner, cfg, local);
        for (std::size_t j = 0; j < m; ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < pts.rows(); ++i) s += functions[j].f(pts.row(i));
            per_path[j][p] = s / double(pts.rows());
        }
    });
    rng.next_u64();

    const std::size_t ref_count = reference ? reference : paths * inner;
    const auto ref = uniform_sample(body, ref_count, zero_tilt_config(body, sampler), rng);
    MartingaleReport report;
    report.t = t;
    report.paths = paths;
    report.inner = inner;
    for (std::size_t j = 0; j < m; ++j) {
        std::vector<double> vals(ref.rows());
        for (std::size_t i = 0; i < ref.rows(); ++i) vals[i] = functions[j].f(ref.row(i));
        const auto lhs = mean_se(per_path[j]);
        const auto rhs = batch_mean_se(vals);
        DeviationRow row;
        row.name = functions[j].name;
        row.path_mean = lhs.mean;
        row.path_se = lhs.se;
        row.reference = rhs.mean;
        row.reference_se = rhs.se;
        row.deviation = lhs.mean - rhs.mean;
        row.combined_se = combined(lhs.se, rhs.se);
        row.passed = std::abs(row.deviation) <= 3 * row.combined_se;
        report.rows.push_back(row);
    }
    return report;
}

ClippedPath clipped_martingale(const Vector& times, const std::vector<Vector>& increments,
                               const std::vector<SymMatrix>& covariances) {
    if (increments.empty()) throw DimensionError("clipped_martingale: empty path");
    if (times.size() != increments.size() + 1) throw DimensionError("clipped_martingale: grid and increments differ");
    if (covariances.size() < increments.size()) throw DimensionError("clipped_martingale: missing covariances");
    const std::size_t n = increments.front().size();
    ClippedPath out;
    out.times = times;
    out.quadratic_variation = SymMatrix(n);
    Vector v(n, 0.0);
    out.values.push_back(v);
    for (std::size_t k = 0; k < increments.size(); ++k) {
        const SymMatrix sigma = matrix_function(covariances[k], [](double u) { return clip_eigenvalue(u); });
        v = v + matvec(sigma, increments[k]);
        out.values.push_back(v);
        const double h = times[k + 1] - times[k];
        out.quadratic_variation = out.quadratic_variation + h * SymMatrix::symmetrize(sigma.matrix() * sigma.matrix());
    }
    return out;
}

ClippedPath clipped_martingale(const LocalizationPath& path, const CovarianceTrace& trace) {
    std::vector<SymMatrix> covs;
    covs.reserve(trace.states.size());
    for (const auto& s : trace.states) covs.push_back(s.cov());
    return clipped_martingale(path.times, innovations(path, trace), covs);
}

MaureyPair maurey_decompose(std::span<const double> endpoint, const SymMatrix& quadratic_variation, double r,
                            RngStream& rng) {
    const std::size_t n = endpoint.size();
    check_same_dim(quadratic_variation.dim(), n, "maurey_decompose");
    if (!(r > 0.0)) throw NumericError("maurey_decompose: r must be positive");
    const SymMatrix residual = r * SymMatrix::identity(n) - quadratic_variation;
    const auto d = sym_eig(residual);
    if (d.lambda_min() < -1e-10 * std::max(1.0, r))
        throw NumericError("maurey_decompose: quadratic variation exceeds r·Id");
    const SymMatrix root = d.reconstruct([](double u) { return std::sqrt(std::max(u, 0.0)); });
    const Vector g = matvec(root, gaussian_vector(n, rng));
    const double s = 1.0 / std::sqrt(r);
    MaureyPair out;
    out.r = r;
    out.z1.resize(n);
    out.z2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.z1[i] = s * (endpoint[i] + g[i]);
        out.z2[i] = s * (endpoint[i] - g[i]);
    }
    return out;
}

ConvexOrderReport convex_order_check(const std::function<double(std::span<const double>)>& functional,
                                     const std::vector<Vector>& endpoints, double r, double horizon, RngStream& rng,
                                     std::size_t gaussian) {
    if (endpoints.size() < 2) throw NumericError("convex_order_check: need at least 2 endpoints");
    const std::size_t n = endpoints.front().size();
    std::vector<double> lhs(endpoints.size());
    for (std::size_t i = 0; i < endpoints.size(); ++i) lhs[i] = functional(endpoints[i]);
    const std::size_t m = gaussian ? gaussian : endpoints.size();
    const double scale = std::sqrt(r * horizon);
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = functional(scale * gaussian_vector(n, rng));
    const auto a = mean_se(lhs);
    const auto b = mean_se(rhs);
    ConvexOrderReport out;
    out.martingale_mean = a.mean;
    out.martingale_se = a.se;
    out.gaussian_mean = b.mean;
    out.gaussian_se = b.se;
    out.passed = a.mean >= b.mean - 3 * combined(a.se, b.se);
    return out;
}

EndpointReport endpoint_law_check(const Body& body, double horizon, std::size_t paths, std::size_t inner,
                                  RngStream& rng, const SamplerConfig& sampler) {
    const std::size_t n = body.dim();
    PointCloud ends(paths, n);
    parallel_for(paths, [&](std::size_t p) {
        RngStream local = rng.spawn(p);
        SamplerConfig cfg = sampler;
        cfg.chains = 1;
        const auto path = tilt_path_exact(body, horizon, horizon, local, cfg);
        const auto state = measure_state(body, horizon, path.theta.back(), inner, local, cfg);
        std::copy(state.mean().begin(), state.mean().end(), ends.row(p).begin());
    });
    rng.next_u64();
    const auto ref = uniform_sample(body, paths, zero_tilt_config(body, sampler), rng);

    EndpointReport out;
    out.horizon = horizon;
    out.paths = paths;
    for (std::size_t k = 0; k < kEndpointDirections; ++k) {
        const Vector u = uniform_sphere(n, rng);
        std::vector<double> a(paths), b(paths);
        for (std::size_t i = 0; i < paths; ++i) {
            a[i] = dot(ends.row(i), u);
            b[i] = dot(ref.row(i), u);
        }
        const double p = ks_two_sample(std::move(a), std::move(b)).p_value;
        out.p_values.push_back(p);
        out.directions_passed += p > 0.01;
    }
    const auto m = estimate_moments(ends);
    out.mean = m.mean;
    out.variance.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.variance[i] = m.cov(i, i);
    return out;
}

bool FreedmanReport::passed() const {
    return std::all_of(rows.begin(), rows.end(), [](const FreedmanRow& r) { return r.passed; });
}

FreedmanReport freedman_check(double qv_cap, const std::vector<double>& levels, std::size_t paths,
                              std::size_t steps, RngStream& rng, bool adaptive) {
    if (!(qv_cap >= 0.0)) throw NumericError("freedman_check: QV cap must be >= 0");
    if (paths == 0 || steps == 0) throw NumericError("freedman_check: need paths and steps");
    const double h = 1.0 / double(steps);
    const double sigma_hi = std::sqrt(qv_cap);
    std::vector<std::size_t> hits(levels.size(), 0);
    for (std::size_t p = 0; p < paths; ++p) {
        double m = 0.0, sup = 0.0;
        for (std::size_t k = 0; k < steps; ++k) {
            const double sigma = adaptive && m >= 0.0 ? 0.5 * sigma_hi : sigma_hi;
            const double next = m + sigma * std::sqrt(h) * rng.normal();
            // Maximum of a Brownian bridge from m to next with variance σ²h.
            const double gap = next - m;
            const double bridge =
                0.5 * (m + next + std::sqrt(gap * gap - 2.0 * sigma * sigma * h * std::log(rng.uniform_open())));
            sup = std::max(sup, bridge);
            m = next;
        }
        for (std::size_t j = 0; j < levels.size(); ++j) hits[j] += sup >= levels[j];
    }
    FreedmanReport out;
    out.qv_cap = qv_cap;
    out.paths = paths;
    out.adaptive = adaptive;
    for (std::size_t j = 0; j < levels.size(); ++j) {
        FreedmanRow row;
        row.a = levels[j];
        row.frequency = double(hits[j]) / double(paths);
        row.se = std::sqrt(row.frequency * (1.0 - row.frequency) / double(paths));
        row.bound = qv_cap > 0.0 ? std::exp(-row.a * row.a / (2.0 * qv_cap)) : (row.a > 0.0 ? 0.0 : 1.0);
        row.reflection = qv_cap > 0.0 ? std::min(1.0, 2.0 * normal_sf(row.a / std::sqrt(qv_cap))) : row.bound;
        row.passed = row.frequency <= row.bound + 3 * row.se;
        out.rows.push_back(row);
    }
    return out;
}

MeanSe barycenter_regression(const std::vector<LocalizationPath>& paths, const std::vector<CovarianceTrace>& traces) {
    if (paths.size() != traces.size()) throw DimensionError("barycenter_regression: paths and traces differ");
    std::vector<double> xs, ys;
    for (std::size_t p = 0; p < paths.size(); ++p) {
        const auto dw = innovations(paths[p], traces[p]);
        const auto& st = traces[p].states;
        for (std::size_t k = 0; k < dw.size() && k + 1 < st.size(); ++k) {
            const Vector pred = matvec(st[k].cov(), dw[k]);
            for (std::size_t i = 0; i < pred.size(); ++i) {
                xs.push_back(pred[i]);
                ys.push_back(st[k + 1].mean()[i] - st[k].mean()[i]);
            }
        }
    }
    return regression_slope_origin(xs, ys);
}

}  // namespace isoloc
