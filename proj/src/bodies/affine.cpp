#include "isoloc/bodies/affine.hpp"

#include <cmath>

#include "isoloc/bodies/ball.hpp"
#include "isoloc/bodies/polytope.hpp"
#include "isoloc/numkit/eig.hpp"

namespace isoloc {

namespace {

constexpr double kMaxCondition = 1e12;

void check_invertible(const Matrix& t, std::size_t n) {
    if (t.rows() != n || t.cols() != n) throw DimensionError("linear map has the wrong shape");
    if (!(condition_number(t) <= kMaxCondition)) throw NumericError("linear map is singular or ill-conditioned");
}

}  // namespace

AffineBody::AffineBody(BodyPtr base, Matrix t, Vector y) : base_(std::move(base)), t_(std::move(t)), y_(std::move(y)) {
    const std::size_t n = base_->dim();
    check_invertible(t_, n);
    if (y_.empty()) y_.assign(n, 0.0);
    check_same_dim(y_.size(), n, "AffineBody: shift");
    t_inv_ = inverse(t_);
    if (max_abs(t_ * t_inv_ - Matrix::identity(n)) > 1e-10) throw NumericError("AffineBody: inaccurate inverse");
    origin_pre_ = matvec(t_inv_, -1.0 * y_);
    if (shifted() && !(base_->gauge(origin_pre_) < 1.0)) throw InvalidBodyError("translate: origin leaves the body");
}

bool AffineBody::shifted() const { return max_abs(y_) != 0.0; }

double AffineBody::gauge(std::span<const double> x) const {
    const Vector w = matvec(t_inv_, x);
    if (!shifted()) return base_->gauge(w);
    if (max_abs(w) == 0.0) return 0.0;
    return 1.0 / base_->chord(origin_pre_, w).upper;
}

double AffineBody::support(std::span<const double> theta) const {
    return base_->support(matvec_t(t_, theta)) + dot(theta, y_);
}

Chord AffineBody::chord(std::span<const double> x, std::span<const double> d) const {
    check_same_dim(x.size(), dim(), "chord: x");
    const Vector p = matvec(t_inv_, Vector(x.begin(), x.end()) - y_);
    return base_->chord(p, matvec(t_inv_, d));
}

RadiusBound AffineBody::radius() const {
    if (!shifted()) {
        if (auto ball = std::dynamic_pointer_cast<const Ball>(base_)) return {ball->r() * op_norm(t_), true};
    }
    // Sampled support values give a lower bound on max |x|.
    RngStream rng(0x5eed5eed, dim());
    double r = 0.0;
    for (std::size_t k = 0; k < 64 * dim(); ++k) r = std::max(r, support(uniform_sphere(dim(), rng)));
    return {r, false};
}

BodyPtr AffineBody::polar() const {
    if (shifted()) throw InvalidBodyError("polar: translated body " + describe());
    // (T K)° = T^{-T} K°
    return linear_image(base_->polar(), t_inv_.transpose());
}

void AffineBody::sample_exact(RngStream& rng, std::span<double> out) const {
    Vector z(dim());
    base_->sample_exact(rng, z);
    const Vector p = matvec(t_, z);
    for (std::size_t i = 0; i < dim(); ++i) out[i] = p[i] + y_[i];
}

std::string AffineBody::describe() const { return "affine(" + base_->describe() + ")"; }

BodyPtr linear_image(const BodyPtr& body, const Matrix& t) {
    check_invertible(t, body->dim());
    if (auto p = std::dynamic_pointer_cast<const Polytope>(body)) return p->mapped(t, inverse(t));
    if (auto a = std::dynamic_pointer_cast<const AffineBody>(body))
        return std::make_shared<AffineBody>(a->base(), t * a->map(), matvec(t, a->shift()));
    return std::make_shared<AffineBody>(body, t, Vector{});
}

BodyPtr translate(const BodyPtr& body, std::span<const double> y) {
    check_same_dim(y.size(), body->dim(), "translate");
    if (auto p = std::dynamic_pointer_cast<const Polytope>(body)) return p->shifted(y);
    if (auto a = std::dynamic_pointer_cast<const AffineBody>(body))
        return std::make_shared<AffineBody>(a->base(), a->map(), a->shift() + Vector(y.begin(), y.end()));
    return std::make_shared<AffineBody>(body, Matrix::identity(body->dim()), Vector(y.begin(), y.end()));
}

}  // namespace isoloc
