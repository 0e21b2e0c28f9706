#pragma once

#include "isoloc/estimators/types.hpp"

namespace isoloc {

struct OperatorNorm {
    double value = 0.0;
    bool certified = true;
    std::string method;
};

/// ‖A: K → T‖ = sup_{x≠0} ‖Ax‖_T / ‖x‖_K. Exact as max over K's vertices of
/// ‖Av‖_T/‖v‖_K, or as max over T's facets aᵢ·y ≤ bᵢ of h_K(Aᵀaᵢ)/bᵢ.
/// Otherwise a lower bound over `fallback` random directions, uncertified.
OperatorNorm operator_gauge_norm(const Matrix& a, const Body& k, const Body& t, RngStream* rng = nullptr,
                                 std::size_t fallback = 20000);

struct ChevetReport {
    /// E‖Γ: K → T‖ over Gaussian Γ.
    ScalarEstimate gaussian;
    /// E‖U: K → T‖ over Haar U.
    ScalarEstimate orthogonal;
    double radius_k = 0.0;         // R(K)
    double m_t = 0.0;              // M(T)
    double radius_t_polar = 0.0;   // R(T°)
    double m_k_polar = 0.0;        // M(K°) = M*(K)
    /// R(K)·M(T) + R(T°)·M(K°)
    double bracket = 0.0;
    /// gaussian / (√n·bracket)
    double gaussian_ratio = 0.0;
    /// orthogonal / bracket
    double orthogonal_ratio = 0.0;
    bool certified = true;
};

/// `sphere` draws estimate M(T) and M(K°).
ChevetReport chevet_estimate(const Body& k, const Body& t, std::size_t trials, std::size_t sphere, RngStream& rng);

struct SingularFactor {
    /// δ̂ₙ = (1/n)·E tr (ΓᵀΓ)^{1/2}
    ScalarEstimate delta;
    /// Largest |off-diagonal| of the mean of (ΓᵀΓ)^{1/2}, and its se.
    double max_off_diagonal = 0.0;
    double off_diagonal_se = 0.0;
};

SingularFactor mean_singular_factor(std::size_t n, std::size_t trials, RngStream& rng);

}  // namespace isoloc
