#include "isoloc/bodies/ball.hpp"

#include <cmath>

namespace isoloc {

Ball::Ball(std::size_t n, double r) : n_(n), r_(r) {
    if (n == 0) throw DimensionError("ball: dimension must be >= 1");
    if (!(r > 0.0) || !std::isfinite(r)) throw InvalidBodyError("ball: radius must be positive");
}

double Ball::gauge(std::span<const double> x) const {
    check_same_dim(x.size(), n_, "gauge");
    return norm(x) / r_;
}

double Ball::support(std::span<const double> theta) const {
    check_same_dim(theta.size(), n_, "support");
    return r_ * norm(theta);
}

Chord Ball::chord(std::span<const double> x, std::span<const double> d) const {
    check_same_dim(x.size(), n_, "chord: x");
    check_same_dim(d.size(), n_, "chord: d");
    // |x + t d|² = r²
    const double dd = dot(d, d);
    if (dd == 0.0) throw DimensionError("chord: zero direction");
    const double xd = dot(x, d) / dd;
    const double c = (dot(x, x) - r_ * r_) / dd;
    if (!(c < 0.0)) throw InvalidBodyError("chord: x is not an interior point");
    const double disc = std::sqrt(xd * xd - c);
    // Stable roots: the product of the roots is c.
    const double far = xd >= 0 ? -xd - disc : -xd + disc;
    const double near = c / far;
    return {std::min(far, near), std::max(far, near)};
}

BodyPtr Ball::polar() const { return std::make_shared<Ball>(n_, 1.0 / r_); }

void Ball::sample_exact(RngStream& rng, std::span<double> out) const {
    check_same_dim(out.size(), n_, "sample_exact");
    const Vector u = uniform_sphere(n_, rng);
    const double rad = r_ * std::pow(rng.uniform_open(), 1.0 / double(n_));
    for (std::size_t i = 0; i < n_; ++i) out[i] = rad * u[i];
}

std::string Ball::describe() const {
    return "ball(n=" + std::to_string(n_) + ",r=" + std::to_string(r_) + ")";
}

}  // namespace isoloc
