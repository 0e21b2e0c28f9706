#include "isoloc/isotropic/isotropic.hpp"

#include <cmath>

#include "isoloc/bodies/constructors.hpp"
#include "isoloc/isotropic/whitening_cache.hpp"
#include "isoloc/numkit/eig.hpp"

namespace isoloc {

namespace {

constexpr double kSingularFloor = 1e-8;

double cov_residual(const SymMatrix& cov) {
    const auto d = sym_eig(cov);
    return std::max(std::abs(d.lambda_max() - 1.0), std::abs(d.lambda_min() - 1.0));
}

}  // namespace

BodyPtr apply_whitening(const BodyPtr& body, const Matrix& map, std::span<const double> shift) {
    BodyPtr out = linear_image(body, map);
    if (max_abs(shift) > 0.0) out = translate(out, shift);
    return out;
}

IsotropicBody isotropize(const BodyPtr& body, const IsotropizeConfig& cfg, RngStream& rng) {
    const std::size_t n = body->dim();
    if (cfg.samples < 2 * n + 2) throw NumericError("isotropize: too few samples");
    if (cfg.max_iters == 0) throw NumericError("isotropize: max_iters must be positive");

    IsotropizationReport report;
    report.map = Matrix::identity(n);
    report.shift = Vector(n, 0.0);
    report.samples = cfg.samples;

    SamplerConfig sampler = cfg.sampler;
    if (cfg.prefer_exact && body->has_exact_sampler()) sampler.walk = WalkType::exact;

    BodyPtr current = body;
    for (std::size_t it = 1; it <= cfg.max_iters; ++it) {
        report.iterations = it;
        const auto m = estimate_moments(uniform_sample(*current, cfg.samples, sampler, rng));
        report.residual_mean = norm(m.mean);
        report.residual_cov = cov_residual(m.cov);
        if (report.residual_mean <= cfg.mean_tol && report.residual_cov <= cfg.cov_tol) {
            if (cfg.sandwich_directions > 0) {
                report.sandwich = verify_sandwich(*current, cfg.sandwich_directions, cfg.cov_tol, rng);
                if (!report.sandwich->passed())
                    throw NumericError("isotropize: sandwich check rejected the position of " + body->describe());
            }
            return {current, report};
        }
        if (sym_eig(m.cov).lambda_min() < kSingularFloor)
            throw NumericError("isotropize: sample covariance is near singular");
        // New body W(x − â) on top of map·K + shift.
        const Matrix w = matrix_inv_sqrt(m.cov, kSingularFloor).matrix();
        report.map = w * report.map;
        report.shift = matvec(w, report.shift - m.mean);
        current = apply_whitening(body, report.map, report.shift);
    }
    throw NumericError("isotropize: tolerance not met after " + std::to_string(cfg.max_iters) + " iterations (mean " +
                       std::to_string(report.residual_mean) + ", cov " + std::to_string(report.residual_cov) + ")");
}

SandwichReport verify_sandwich(const Body& body, std::size_t directions, double tol, RngStream& rng) {
    const std::size_t n = body.dim();
    SandwichReport r;
    r.n = n;
    r.directions = directions;
    r.inner_bound = std::sqrt((n + 2.0) / n);
    r.outer_bound = std::sqrt(n * (n + 2.0));
    r.slack = 2.0 * tol * std::sqrt(double(n));

    r.min_support = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < directions; ++k) {
        const Vector u = uniform_sphere(n, rng);
        r.min_support = std::min(r.min_support, body.support(u));
    }
    if (const Facets* f = body.facets()) {
        double in = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < f->a.rows(); ++i) in = std::min(in, f->b[i] / norm(f->a.row(i)));
        r.exact_inradius = in;
    }
    const double inner = r.exact_inradius.value_or(r.min_support);
    r.inner_ok = inner >= r.inner_bound - r.slack;
    r.radius = body.radius();
    r.outer_ok = r.radius.value <= r.outer_bound + r.slack;
    return r;
}

double isotropic_scale(const std::string& name, std::size_t n) {
    const std::string c = canonical_body_name(name);
    const double d = double(n);
    if (c == "cube") return std::sqrt(3.0);
    if (c == "ball") return std::sqrt(d + 2.0);
    if (c == "crosspoly") return std::sqrt((d + 1.0) * (d + 2.0) / 2.0);
    return std::sqrt(d * (d + 2.0));
}

BodyPtr named_isotropic(const std::string& name, std::size_t n, Representation rep) {
    const std::string c = canonical_body_name(name);
    const double s = isotropic_scale(c, n);
    if (c == "cube") return cube(n, s, rep);
    if (c == "ball") return ball(n, s);
    if (c == "crosspoly") return cross_polytope(n, s, rep);
    return simplex(n, s, rep);
}

}  // namespace isoloc
