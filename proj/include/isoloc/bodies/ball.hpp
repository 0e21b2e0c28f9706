#pragma once

#include "isoloc/bodies/body.hpp"

namespace isoloc {

/// Euclidean ball of radius r centred at the origin.
class Ball final : public Body {
public:
    Ball(std::size_t n, double r);

    double r() const { return r_; }

    std::size_t dim() const override { return n_; }
    double gauge(std::span<const double> x) const override;
    double support(std::span<const double> theta) const override;
    Chord chord(std::span<const double> x, std::span<const double> d) const override;
    RadiusBound radius() const override { return {r_, true}; }
    BodyPtr polar() const override;

    bool has_exact_sampler() const override { return true; }
    void sample_exact(RngStream& rng, std::span<double> out) const override;

    std::string describe() const override;

private:
    std::size_t n_;
    double r_;
};

}  // namespace isoloc
