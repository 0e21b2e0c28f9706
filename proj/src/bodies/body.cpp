#include "isoloc/bodies/body.hpp"

#include <cmath>

#include "isoloc/numkit/eig.hpp"

namespace isoloc {

namespace {

// Largest t >= 0 with gauge(x + t·d) <= 1, given gauge(x) < 1.
double chord_end(const Body& body, std::span<const double> x, std::span<const double> d, double sign) {
    Vector p(x.size());
    auto g = [&](double t) {
        for (std::size_t i = 0; i < x.size(); ++i) p[i] = x[i] + sign * t * d[i];
        return body.gauge(p);
    };
    double lo = 0.0, hi = 1.0;
    int iter = 0;
    while (g(hi) <= 1.0) {
        lo = hi;
        hi *= 2.0;
        if (++iter > kChordMaxIter) throw InvalidBodyError("chord: body is unbounded along the direction");
    }
    for (; iter < 2 * kChordMaxIter && hi - lo > kChordTol * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        (g(mid) <= 1.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

Chord Body::chord(std::span<const double> x, std::span<const double> d) const {
    check_same_dim(x.size(), dim(), "chord: x");
    check_same_dim(d.size(), dim(), "chord: d");
    if (!(gauge(x) < 1.0)) throw InvalidBodyError("chord: x is not an interior point");
    if (norm(d) == 0.0) throw DimensionError("chord: zero direction");
    return {-chord_end(*this, x, d, -1.0), chord_end(*this, x, d, 1.0)};
}

BodyPtr Body::polar() const { throw InvalidBodyError("polar: unsupported representation for " + describe()); }

void Body::sample_exact(RngStream&, std::span<double>) const {
    throw InvalidBodyError("sample_exact: no exact sampler for " + describe());
}

RadiusBound radius_polar(const Body& body) {
    if (const Facets* f = body.facets()) {
        double r = 0.0;
        for (std::size_t i = 0; i < f->a.rows(); ++i) r = std::max(r, norm(f->a.row(i)) / f->b[i]);
        return {r, true};
    }
    return body.polar()->radius();
}

double condition_number(const Matrix& t) {
    if (t.rows() != t.cols()) throw DimensionError("condition_number: matrix must be square");
    const auto d = sym_eig(SymMatrix::symmetrize(t.transpose() * t));
    if (d.lambda_min() <= 0.0) return std::numeric_limits<double>::infinity();
    return std::sqrt(d.lambda_max() / d.lambda_min());
}

}  // namespace isoloc
