#pragma once

#include "isoloc/bodies/body.hpp"

namespace isoloc {

/// T(K) + y for a base body K and invertible T.
///
/// Gauges are pulled back through T⁻¹. With y ≠ 0 the gauge is recovered
/// from the base chord through the preimage of the origin.
class AffineBody final : public Body {
public:
    AffineBody(BodyPtr base, Matrix t, Vector y);

    const BodyPtr& base() const { return base_; }
    const Matrix& map() const { return t_; }
    const Matrix& inverse_map() const { return t_inv_; }
    const Vector& shift() const { return y_; }

    std::size_t dim() const override { return base_->dim(); }
    double gauge(std::span<const double> x) const override;
    double support(std::span<const double> theta) const override;
    Chord chord(std::span<const double> x, std::span<const double> d) const override;
    RadiusBound radius() const override;
    BodyPtr polar() const override;

    bool has_exact_sampler() const override { return base_->has_exact_sampler(); }
    void sample_exact(RngStream& rng, std::span<double> out) const override;

    std::string describe() const override;

private:
    bool shifted() const;

    BodyPtr base_;
    Matrix t_;
    Matrix t_inv_;
    Vector y_;
    Vector origin_pre_;  // T⁻¹(−y), the preimage of the origin
};

}  // namespace isoloc
