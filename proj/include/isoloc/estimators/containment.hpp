#pragma once

#include "isoloc/estimators/operator_norms.hpp"
#include "isoloc/numkit/stats.hpp"

namespace isoloc {

/// Smallest λ with U(K₁) ⊆ λK₂. Needs an exact operator-norm route (vertices
/// of K₁ or facets of K₂); throws InvalidBodyError otherwise and NumericError
/// when ‖UᵀU − Id‖ exceeds 1e-8.
double containment_lambda(const Body& k1, const Body& k2, const Matrix& u);

struct PartialContainment {
    double beta = 0.0;
    /// β-quantile of ‖X‖_K for X uniform in T, with a 95% order-statistic CI.
    QuantileCi quantile;
    std::size_t count = 0;
};

/// Smallest λ with Vol(λK ∩ T) ≥ β·Vol(T), estimated from samples of T.
PartialContainment partial_containment_lambda(const Body& k, const Body& t, double beta, std::size_t count,
                                              RngStream& rng, const SamplerConfig& sampler = {});

struct DistanceCertificate {
    enum class Kind { banach_mazur, partial };
    Kind kind = Kind::banach_mazur;
    std::string body1;
    std::string body2;
    /// Rotation attaining the bound (identity for partial).
    Matrix u;
    /// Banach–Mazur: λ with U(K₁) ⊆ λK₂. Partial: quantile of ‖·‖_{K₁} on K₂.
    double forward = 0.0;
    /// Banach–Mazur: λ' with Uᵀ(K₂) ⊆ λ'K₁. Partial: quantile of ‖·‖_{K₂} on K₁.
    double backward = 0.0;
    /// λ·λ' or max(forward, backward)².
    double bound = 0.0;
    std::uint64_t seed = 0;
    std::size_t trials = 0;
    /// Index of the winning candidate (0 is the identity).
    std::size_t best_index = 0;
};

/// Minimum of λ(U)·λ'(Uᵀ) over the identity and `rotations` Haar draws; the
/// k-th draw uses RngStream(seed, k), so more rotations never worsen the bound.
DistanceCertificate dbm_upper(const BodyPtr& k1, const BodyPtr& k2, std::size_t rotations, std::uint64_t seed);

/// Recomputes the Banach–Mazur bound from the stored rotation.
double recheck_certificate(const DistanceCertificate& cert, const Body& k1, const Body& k2);

/// λ = max of the two directional β-quantiles, squared.
DistanceCertificate dpc_upper(const BodyPtr& k1, const BodyPtr& k2, double beta, std::size_t count,
                              std::uint64_t seed, const SamplerConfig& sampler = {});

std::string to_string(DistanceCertificate::Kind kind);

}  // namespace isoloc
