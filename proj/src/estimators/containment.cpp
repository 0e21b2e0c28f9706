#include "isoloc/estimators/containment.hpp"

#include <cmath>

#include "isoloc/numkit/parallel.hpp"

namespace isoloc {

namespace {

constexpr double kOrthogonalTol = 1e-8;

void check_orthogonal(const Matrix& u) {
    if (u.rows() != u.cols()) throw DimensionError("containment_lambda: U must be square");
    if (max_abs(u.transpose() * u - Matrix::identity(u.rows())) > kOrthogonalTol)
        throw NumericError("containment_lambda: U is not orthogonal");
}

std::vector<double> gauges_on_samples(const Body& k, const Body& t, std::size_t count, RngStream& rng,
                                      const SamplerConfig& sampler) {
    check_same_dim(k.dim(), t.dim(), "partial_containment_lambda");
    SamplerConfig cfg = sampler;
    if (t.has_exact_sampler()) cfg.walk = WalkType::exact;
    const auto pts = uniform_sample(t, count, cfg, rng);
    std::vector<double> g(count);
    for (std::size_t i = 0; i < count; ++i) g[i] = k.gauge(pts.row(i));
    return g;
}

}  // namespace

std::string to_string(DistanceCertificate::Kind kind) {
    return kind == DistanceCertificate::Kind::banach_mazur ? "banach-mazur" : "partial";
}

double containment_lambda(const Body& k1, const Body& k2, const Matrix& u) {
    check_orthogonal(u);
    return operator_gauge_norm(u, k1, k2).value;
}

PartialContainment partial_containment_lambda(const Body& k, const Body& t, double beta, std::size_t count,
                                              RngStream& rng, const SamplerConfig& sampler) {
    if (!(beta > 0.0 && beta < 1.0)) throw NumericError("partial_containment_lambda: beta must lie in (0, 1)");
    if (count == 0) throw NumericError("partial_containment_lambda: need samples");
    PartialContainment out;
    out.beta = beta;
    out.count = count;
    out.quantile = quantile_with_ci(gauges_on_samples(k, t, count, rng, sampler), beta);
    return out;
}

DistanceCertificate dbm_upper(const BodyPtr& k1, const BodyPtr& k2, std::size_t rotations, std::uint64_t seed) {
    const std::size_t n = k1->dim();
    check_same_dim(k2->dim(), n, "dbm_upper");
    const std::size_t total = rotations + 1;
    std::vector<Matrix> us(total);
    std::vector<double> fwd(total), bwd(total);
    parallel_for(total, [&](std::size_t i) {
        if (i == 0) {
            us[i] = Matrix::identity(n);
        } else {
            RngStream local(seed, i);
            us[i] = haar_orthogonal(n, local);
        }
        fwd[i] = containment_lambda(*k1, *k2, us[i]);
        bwd[i] = containment_lambda(*k2, *k1, us[i].transpose());
    });
    std::size_t best = 0;
    for (std::size_t i = 1; i < total; ++i)
        if (fwd[i] * bwd[i] < fwd[best] * bwd[best]) best = i;
    DistanceCertificate c;
    c.kind = DistanceCertificate::Kind::banach_mazur;
    c.body1 = k1->describe();
    c.body2 = k2->describe();
    c.u = us[best];
    c.forward = fwd[best];
    c.backward = bwd[best];
    c.bound = fwd[best] * bwd[best];
    c.seed = seed;
    c.trials = total;
    c.best_index = best;
    return c;
}

double recheck_certificate(const DistanceCertificate& cert, const Body& k1, const Body& k2) {
    if (cert.kind != DistanceCertificate::Kind::banach_mazur)
        throw Error("recheck_certificate: only Banach–Mazur certificates carry a rotation");
    return containment_lambda(k1, k2, cert.u) * containment_lambda(k2, k1, cert.u.transpose());
}

DistanceCertificate dpc_upper(const BodyPtr& k1, const BodyPtr& k2, double beta, std::size_t count,
                              std::uint64_t seed, const SamplerConfig& sampler) {
    RngStream rng(seed);
    DistanceCertificate c;
    c.kind = DistanceCertificate::Kind::partial;
    c.body1 = k1->describe();
    c.body2 = k2->describe();
    c.u = Matrix::identity(k1->dim());
    c.forward = partial_containment_lambda(*k1, *k2, beta, count, rng, sampler).quantile.estimate;
    c.backward = partial_containment_lambda(*k2, *k1, beta, count, rng, sampler).quantile.estimate;
    const double q = std::max(c.forward, c.backward);
    c.bound = q * q;
    c.seed = seed;
    c.trials = count;
    return c;
}

}  // namespace isoloc
