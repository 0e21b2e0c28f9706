#pragma once

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

class InfeasibleError : public Error {
public:
    using Error::Error;
};

class UnboundedError : public Error {
public:
    using Error::Error;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::optimal;
    double value = 0.0;
    Vector x;
};

/// max c·x subject to A x <= b with x free.
///
/// Dense two-phase tableau simplex with Bland's rule, so the pivot sequence
/// is a deterministic function of the input. Free variables are split as
/// x = x⁺ − x⁻.
LpResult lp_solve_status(std::span<const double> c, const Matrix& a, std::span<const double> b);

/// As lp_solve_status but throws InfeasibleError / UnboundedError.
LpResult lp_solve(std::span<const double> c, const Matrix& a, std::span<const double> b);

}  // namespace isoloc
