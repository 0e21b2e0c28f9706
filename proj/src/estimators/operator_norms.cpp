#include "isoloc/estimators/operator_norms.hpp"

#include <cmath>

#include "isoloc/estimators/gauge_means.hpp"
#include "isoloc/numkit/eig.hpp"
#include "isoloc/numkit/parallel.hpp"

namespace isoloc {

namespace {

double by_vertices(const Matrix& a, const Body& k, const Body& t) {
    double best = 0.0;
    for (const Vector& v : *k.vertices()) {
        const double gk = k.gauge(v);
        if (gk <= 0.0) continue;
        best = std::max(best, t.gauge(matvec(a, v)) / gk);
    }
    return best;
}

double by_facets(const Matrix& a, const Body& k, const Body& t) {
    const Facets& f = *t.facets();
    double best = 0.0;
    for (std::size_t i = 0; i < f.a.rows(); ++i) best = std::max(best, k.support(matvec_t(a, f.a.row(i))) / f.b[i]);
    return best;
}

ScalarEstimate mean_norm(const std::vector<OperatorNorm>& xs, std::string method) {
    std::vector<double> v(xs.size());
    bool certified = true;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        v[i] = xs[i].value;
        certified = certified && xs[i].certified;
    }
    const MeanSe m = mean_se(v);
    return {m.mean, m.se, m.count, std::move(method), certified};
}

}  // namespace

OperatorNorm operator_gauge_norm(const Matrix& a, const Body& k, const Body& t, RngStream* rng,
                                 std::size_t fallback) {
    const std::size_t n = k.dim();
    check_same_dim(t.dim(), n, "operator_gauge_norm: bodies");
    if (a.rows() != n || a.cols() != n) throw DimensionError("operator_gauge_norm: matrix must be n×n");
    const auto* verts = k.vertices();
    const Facets* facets = t.facets();
    if (verts && (!facets || verts->size() <= facets->a.rows())) return {by_vertices(a, k, t), true, "vertices"};
    if (facets) return {by_facets(a, k, t), true, "facets"};
    if (!rng) throw InvalidBodyError("operator_gauge_norm: no exact route for " + k.describe() + " -> " + t.describe());
    double best = 0.0;
    for (std::size_t i = 0; i < fallback; ++i) {
        const Vector x = uniform_sphere(n, *rng);
        best = std::max(best, t.gauge(matvec(a, x)) / k.gauge(x));
    }
    return {best, false, "sampled"};
}

ChevetReport chevet_estimate(const Body& k, const Body& t, std::size_t trials, std::size_t sphere, RngStream& rng) {
    const std::size_t n = k.dim();
    std::vector<OperatorNorm> gauss(trials), orth(trials);
    parallel_for(trials, [&](std::size_t i) {
        RngStream local = rng.spawn(i);
        gauss[i] = operator_gauge_norm(gaussian_matrix(n, local), k, t, &local);
        orth[i] = operator_gauge_norm(haar_orthogonal(n, local), k, t, &local);
    });
    rng.next_u64();
    ChevetReport r;
    r.gaussian = mean_norm(gauss, "gaussian-matrix");
    r.orthogonal = mean_norm(orth, "haar");
    const RadiusBound rk = k.radius();
    const RadiusBound rt = radius_polar(t);
    r.radius_k = rk.value;
    r.radius_t_polar = rt.value;
    r.m_t = M_of(t, sphere, rng).value;
    r.m_k_polar = Mstar_of(k, sphere, rng).value;
    r.bracket = r.radius_k * r.m_t + r.radius_t_polar * r.m_k_polar;
    r.gaussian_ratio = r.gaussian.value / (std::sqrt(double(n)) * r.bracket);
    r.orthogonal_ratio = r.orthogonal.value / r.bracket;
    r.certified = rk.certified && rt.certified && r.gaussian.certified && r.orthogonal.certified;
    return r;
}

SingularFactor mean_singular_factor(std::size_t n, std::size_t trials, RngStream& rng) {
    if (n == 0 || trials < 2) throw NumericError("mean_singular_factor: need n >= 1 and trials >= 2");
    std::vector<double> tr(trials);
    std::vector<std::vector<double>> off(n * n, std::vector<double>(trials));
    for (std::size_t k = 0; k < trials; ++k) {
        const Matrix g = gaussian_matrix(n, rng);
        const SymMatrix s = matrix_sqrt_psd(SymMatrix::symmetrize(g.transpose() * g));
        tr[k] = trace(s) / double(n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off[i * n + j][k] = s(i, j);
    }
    SingularFactor out;
    const MeanSe d = mean_se(tr);
    out.delta = {d.mean, d.se, d.count, "gaussian-matrix", true};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const MeanSe m = mean_se(off[i * n + j]);
            if (std::abs(m.mean) >= out.max_off_diagonal) {
                out.max_off_diagonal = std::abs(m.mean);
                out.off_diagonal_se = m.se;
            }
        }
    }
    return out;
}

}  // namespace isoloc
