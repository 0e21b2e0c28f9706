#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isoloc/numkit/linalg.hpp"
#include "isoloc/numkit/rng.hpp"

namespace isoloc {

class InvalidBodyError : public Error {
public:
    using Error::Error;
};

/// Parameter interval [lower, upper] of the line x + t·d inside the body.
struct Chord {
    double lower = 0.0;
    double upper = 0.0;
};

/// R(K) = max_{x∈K} |x|. `certified` is false when the value is only a
/// sampled lower bound.
struct RadiusBound {
    double value = 0.0;
    bool certified = true;
};

/// Half-space description {x : A x <= b}, b > 0.
struct Facets {
    Matrix a;
    Vector b;
};

class Body;
using BodyPtr = std::shared_ptr<const Body>;

/// Convex body with the origin in its interior.
///
/// Bodies are immutable after construction and safe to share across threads.
class Body {
public:
    virtual ~Body() = default;

    virtual std::size_t dim() const = 0;
    /// Minkowski functional ‖x‖_K; positively homogeneous and convex.
    virtual double gauge(std::span<const double> x) const = 0;
    /// h_K(θ) = max_{x∈K} x·θ.
    virtual double support(std::span<const double> theta) const = 0;
    /// Interval of t with x + t·d in the body. Requires x interior and d ≠ 0;
    /// t is measured in units of d. The default bisects the convex map
    /// t ↦ gauge(x + t·d) to 1e-10 in t.
    virtual Chord chord(std::span<const double> x, std::span<const double> d) const;
    virtual RadiusBound radius() const = 0;
    /// Polar body K° = {y : x·y <= 1 for x in K}.
    virtual BodyPtr polar() const;

    virtual const std::vector<Vector>* vertices() const { return nullptr; }
    virtual const Facets* facets() const { return nullptr; }

    /// Fast exact uniform sampler, when the body has one.
    virtual bool has_exact_sampler() const { return false; }
    /// Writes one uniform point of the body into `out`.
    virtual void sample_exact(RngStream& rng, std::span<double> out) const;

    virtual std::string describe() const = 0;

    bool contains(std::span<const double> x, double tol = 1e-9) const { return gauge(x) <= 1.0 + tol; }
};

/// Bisection tolerance and iteration cap of the generic chord.
inline constexpr double kChordTol = 1e-10;
inline constexpr int kChordMaxIter = 200;

/// R(K°), the inverse inradius of K.
RadiusBound radius_polar(const Body& body);

/// T(K). Polytopes are mapped eagerly; other bodies are wrapped.
/// Throws NumericError when the condition number of T exceeds 1e12.
BodyPtr linear_image(const BodyPtr& body, const Matrix& t);
/// K + y. Requires −y interior to K so that the origin stays interior.
BodyPtr translate(const BodyPtr& body, std::span<const double> y);

/// 2-norm condition number of a square matrix.
double condition_number(const Matrix& t);

}  // namespace isoloc
