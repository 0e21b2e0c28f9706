#include "isoloc/numkit/lp.hpp"

#include <cmath>
#include <limits>

namespace isoloc {

namespace {

constexpr double kPivotTol = 1e-11;
constexpr double kFeasTol = 1e-9;
constexpr std::size_t kMaxPivots = 200000;

struct Tableau {
    std::size_t m = 0;
    std::size_t cols = 0;  // structural + slack + artificial columns; rhs is column `cols`
    Matrix t;
    std::vector<std::size_t> basis;

    double& rhs(std::size_t i) { return t(i, cols); }

    void pivot(std::size_t r, std::size_t c) {
        const double p = t(r, c);
        for (std::size_t j = 0; j <= cols; ++j) t(r, j) /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r) continue;
            const double f = t(i, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= cols; ++j) t(i, j) -= f * t(r, j);
            t(i, c) = 0.0;
        }
        basis[r] = c;
    }

    // Maximizes cost·z over columns [0, allowed). Bland's rule: lowest-index
    // improving column enters; ties in the ratio test go to the lowest basic index.
    LpStatus optimize(const Vector& cost, std::size_t allowed) {
        for (std::size_t iter = 0; iter < kMaxPivots; ++iter) {
            std::size_t enter = allowed;
            for (std::size_t j = 0; j < allowed; ++j) {
                double reduced = cost[j];
                for (std::size_t i = 0; i < m; ++i) reduced -= cost[basis[i]] * t(i, j);
                if (reduced > kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter == allowed) return LpStatus::optimal;
            std::size_t leave = m;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m; ++i) {
                if (t(i, enter) <= kPivotTol) continue;
                const double ratio = rhs(i) / t(i, enter);
                if (ratio < best - 1e-14) {
                    best = ratio;
                    leave = i;
                } else if (ratio <= best + 1e-14 && basis[i] < basis[leave]) {
                    leave = i;
                }
            }
            if (leave == m) return LpStatus::unbounded;
            pivot(leave, enter);
        }
        throw NumericError("lp_solve: pivot limit exceeded");
    }
};

}  // namespace

LpResult lp_solve_status(std::span<const double> c, const Matrix& a, std::span<const double> b) {
    const std::size_t n = a.cols();
    const std::size_t m = a.rows();
    check_same_dim(c.size(), n, "lp_solve: c");
    check_same_dim(b.size(), m, "lp_solve: b");

    std::size_t n_art = 0;
    for (double bi : b) n_art += bi < 0 ? 1 : 0;

    // Columns: x⁺ [0,n), x⁻ [n,2n), slack [2n, 2n+m), artificial [2n+m, ...).
    Tableau tab;
    tab.m = m;
    tab.cols = 2 * n + m + n_art;
    tab.t = Matrix(m, tab.cols + 1);
    tab.basis.resize(m);
    std::size_t art = 2 * n + m;
    for (std::size_t i = 0; i < m; ++i) {
        const double sgn = b[i] < 0 ? -1.0 : 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            tab.t(i, j) = sgn * a(i, j);
            tab.t(i, n + j) = -sgn * a(i, j);
        }
        tab.t(i, 2 * n + i) = sgn;
        tab.rhs(i) = sgn * b[i];
        if (b[i] < 0) {
            tab.t(i, art) = 1.0;
            tab.basis[i] = art++;
        } else {
            tab.basis[i] = 2 * n + i;
        }
    }

    LpResult result;
    const std::size_t structural = 2 * n + m;
    if (n_art > 0) {
        Vector phase1(tab.cols, 0.0);
        for (std::size_t j = structural; j < tab.cols; ++j) phase1[j] = -1.0;
        tab.optimize(phase1, tab.cols);
        double infeas = 0.0;
        for (std::size_t i = 0; i < m; ++i)
            if (tab.basis[i] >= structural) infeas += tab.rhs(i);
        double scale = 1.0;
        for (double bi : b) scale = std::max(scale, std::abs(bi));
        if (infeas > kFeasTol * scale) {
            result.status = LpStatus::infeasible;
            return result;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (tab.basis[i] < structural) continue;
            for (std::size_t j = 0; j < structural; ++j) {
                if (std::abs(tab.t(i, j)) > 1e-9) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
    }

    Vector phase2(tab.cols, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        phase2[j] = c[j];
        phase2[n + j] = -c[j];
    }
    if (tab.optimize(phase2, structural) == LpStatus::unbounded) {
        result.status = LpStatus::unbounded;
        return result;
    }
    Vector z(tab.cols, 0.0);
    for (std::size_t i = 0; i < m; ++i) z[tab.basis[i]] = tab.rhs(i);
    result.x.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) result.x[j] = z[j] - z[n + j];
    result.value = dot(c, result.x);
    return result;
}

LpResult lp_solve(std::span<const double> c, const Matrix& a, std::span<const double> b) {
    LpResult r = lp_solve_status(c, a, b);
    if (r.status == LpStatus::infeasible) throw InfeasibleError("lp_solve: infeasible");
    if (r.status == LpStatus::unbounded) throw UnboundedError("lp_solve: unbounded");
    return r;
}

}  // namespace isoloc
