#include "isoloc/estimators/gauge_means.hpp"

#include <cmath>

#include "isoloc/numkit/special.hpp"

namespace isoloc {

namespace {

ScalarEstimate from_values(const std::vector<double>& xs, std::string method, bool correlated = false) {
    const MeanSe m = correlated ? batch_mean_se(xs) : mean_se(xs);
    return {m.mean, m.se, m.count, std::move(method), true};
}

}  // namespace

ScalarEstimate M_of(const Body& body, std::size_t count, RngStream& rng) {
    std::vector<double> xs(count);
    for (auto& x : xs) x = body.gauge(uniform_sphere(body.dim(), rng));
    return from_values(xs, "sphere");
}

ScalarEstimate Mstar_of(const Body& body, std::size_t count, RngStream& rng) {
    std::vector<double> xs(count);
    for (auto& x : xs) x = body.support(uniform_sphere(body.dim(), rng));
    return from_values(xs, "sphere");
}

ScalarEstimate mean_gauge_gaussian(const Body& body, std::size_t count, RngStream& rng) {
    std::vector<double> xs(count);
    for (auto& x : xs) x = body.gauge(gaussian_vector(body.dim(), rng));
    return from_values(xs, "gaussian");
}

ScalarEstimate mean_gauge_uniform(const Body& norm_body, const Body& domain, std::size_t count, RngStream& rng,
                                  const SamplerConfig& sampler) {
    check_same_dim(norm_body.dim(), domain.dim(), "mean_gauge_uniform");
    SamplerConfig cfg = sampler;
    if (domain.has_exact_sampler()) cfg.walk = WalkType::exact;
    const auto pts = uniform_sample(domain, count, cfg, rng);
    std::vector<double> xs(count);
    for (std::size_t i = 0; i < count; ++i) xs[i] = norm_body.gauge(pts.row(i));
    const bool exact = cfg.walk == WalkType::exact;
    return from_values(xs, exact ? "uniform-exact" : "uniform-hit-and-run", !exact);
}

ScalarEstimate kahane_ratio(const Body& body, double p, std::size_t count, RngStream& rng) {
    if (!(p >= 1.0)) throw NumericError("kahane_ratio: p must be >= 1");
    if (count < 2) throw NumericError("kahane_ratio: need at least 2 samples");
    std::vector<double> g(count);
    for (auto& x : g) x = body.gauge(gaussian_vector(body.dim(), rng));
    double m1 = 0.0, mp = 0.0;
    for (double x : g) {
        m1 += x;
        mp += std::pow(x, p);
    }
    m1 /= double(count);
    mp /= double(count);
    const double ratio = std::pow(mp, 1.0 / p) / m1;
    // Delta method: influence of each draw on log ratio.
    std::vector<double> infl(count);
    for (std::size_t i = 0; i < count; ++i)
        infl[i] = ratio * ((std::pow(g[i], p) - mp) / (p * mp) - (g[i] - m1) / m1);
    const MeanSe s = mean_se(infl);
    return {ratio, s.se, count, "gaussian-delta", true};
}

ScalarEstimate mean_sup_norm_laplace(std::size_t n, std::size_t count, RngStream& rng) {
    std::vector<double> xs(count);
    for (auto& x : xs) {
        double m = 0.0;
        for (std::size_t i = 0; i < n; ++i) m = std::max(m, -std::log(rng.uniform_open()) / std::sqrt(2.0));
        x = m;
    }
    return from_values(xs, "laplace");
}

double isotropic_cube_sup_mean(std::size_t n) { return std::sqrt(3.0) * double(n) / double(n + 1); }

double laplace_sup_mean(std::size_t n) {
    double h = 0.0;
    for (std::size_t k = 1; k <= n; ++k) h += 1.0 / double(k);
    return h / std::sqrt(2.0);
}

double gaussian_sup_mean(std::size_t n) {
    // Composite Simpson on [0, 16]; the integrand is below 1e-50 beyond.
    const int panels = 40000;
    const double hi = 16.0, h = hi / panels;
    auto f = [n](double x) { return -std::expm1(double(n) * std::log1p(-2.0 * normal_sf(x))); };
    double s = f(0.0) + f(hi);
    for (int i = 1; i < panels; ++i) s += (i % 2 ? 4.0 : 2.0) * f(i * h);
    return s * h / 3.0;
}

}  // namespace isoloc
