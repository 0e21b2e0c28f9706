#pragma once

#include <cmath>
#include <string>

#include "isoloc/sampling/moments.hpp"

namespace isoloc {

struct ScalarEstimate {
    double value = 0.0;
    double se = 0.0;
    std::size_t count = 0;
    std::string method;
    /// False when the value is only a sampled bound.
    bool certified = true;
};

/// Surrogates for the unspecified constants, each at least 1:
/// ψ̂ = √log(n+1), κ̂ = 2, Q̂ = ψ̂·√log(n+1), P̂ = κ̂·√log(n+1), and the
/// multiplier standing in for universal C (and 1/c).
struct TheoryConstants {
    double psi = 1.0;
    double kappa = 2.0;
    double q = 1.0;
    double p = 2.0;
    double slack = 10.0;

    static TheoryConstants for_dimension(std::size_t n, double kappa = 2.0, double slack = 10.0) {
        const double l = std::log(double(n) + 1.0);
        TheoryConstants c;
        c.psi = std::max(1.0, std::sqrt(l));
        c.kappa = std::max(1.0, kappa);
        c.q = std::max(1.0, c.psi * std::sqrt(l));
        c.p = std::max(1.0, c.kappa * std::sqrt(l));
        c.slack = std::max(1.0, slack);
        return c;
    }
};

}  // namespace isoloc
