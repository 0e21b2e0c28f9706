#pragma once

#include "isoloc/bodies/body.hpp"

namespace isoloc {

/// Known shape of a polytope image M·S, used for closed-form gauges and
/// exact uniform sampling. S is the box [−s,s]ⁿ, the ℓ¹ ball of radius s,
/// or a simplex (sampled through the polytope's own vertex list).
struct PolytopeShape {
    enum class Kind { box, cross, simplex };
    Kind kind = Kind::box;
    double scale = 1.0;
    std::optional<Matrix> map;  // absent means identity
    std::optional<Matrix> inverse;
};

/// Polytope holding a half-space description, a vertex list, or both.
///
/// Operations pick the cheapest exact route available: closed-form shape
/// gauges, then facets, then a linear program on the vertex list.
class Polytope final : public Body {
public:
    Polytope(std::size_t n, std::optional<Facets> facets, std::optional<std::vector<Vector>> vertices,
             std::optional<PolytopeShape> shape, std::string label, std::optional<Vector> shape_shift = std::nullopt);

    std::size_t dim() const override { return n_; }
    double gauge(std::span<const double> x) const override;
    double support(std::span<const double> theta) const override;
    /// Maximizer of x·θ over the body.
    Vector support_point(std::span<const double> theta) const;
    Chord chord(std::span<const double> x, std::span<const double> d) const override;
    RadiusBound radius() const override;
    BodyPtr polar() const override;

    const std::vector<Vector>* vertices() const override { return vertices_ ? &*vertices_ : nullptr; }
    const Facets* facets() const override { return facets_ ? &*facets_ : nullptr; }
    const std::optional<PolytopeShape>& shape() const { return shape_; }

    bool has_exact_sampler() const override { return shape_.has_value(); }
    void sample_exact(RngStream& rng, std::span<double> out) const override;

    std::string describe() const override { return label_; }
    const std::string& label() const { return label_; }

    /// T(K) with T invertible; both representations and the shape are mapped.
    std::shared_ptr<const Polytope> mapped(const Matrix& t, const Matrix& t_inv) const;
    /// K + y
    std::shared_ptr<const Polytope> shifted(std::span<const double> y) const;

private:
    double gauge_by_lp(std::span<const double> x, std::span<const double> origin) const;

    std::size_t n_;
    std::optional<Facets> facets_;
    std::optional<std::vector<Vector>> vertices_;
    std::optional<PolytopeShape> shape_;
    std::optional<Vector> shape_shift_;
    std::string label_;
};

/// {x : A x <= b}. Requires b > 0; unless `trusted`, boundedness is checked
/// by linear programs in the ±eᵢ directions.
std::shared_ptr<const Polytope> make_hpolytope(Matrix a, Vector b, std::string label = "hpoly", bool trusted = false);
/// conv(v_j). Unless `trusted`, checks by linear programs that the origin is
/// strictly interior.
std::shared_ptr<const Polytope> make_vpolytope(std::vector<Vector> vertices, std::string label = "vpoly",
                                                bool trusted = false);

}  // namespace isoloc
