#include "isoloc/numkit/eig.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace isoloc {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) s += 2.0 * a(i, j) * a(i, j);
    return std::sqrt(s);
}

}  // namespace

SpectralDecomposition sym_eig(const SymMatrix& sym) {
    const std::size_t n = sym.dim();
    for (double v : sym.matrix().data())
        if (!std::isfinite(v)) throw NumericError("sym_eig: non-finite entry");

    Matrix a = sym.matrix();
    Matrix v = Matrix::identity(n);
    double frob = 0.0;
    for (double x : a.data()) frob += x * x;
    frob = std::sqrt(frob);
    const double tol = 1e-12 * std::max(frob, 1e-300);

    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (std::abs(apq) <= 1e-300) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // A ← Jᵀ A J with J the (p,q) rotation.
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v(k, p);
                    const double vkq = v(k, q);
                    v(k, p) = c * vkp - s * vkq;
                    v(k, q) = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });

    SpectralDecomposition out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

SymMatrix SpectralDecomposition::reconstruct(const std::function<double(double)>& f) const {
    const std::size_t n = values.size();
    Vector fv(n);
    for (std::size_t k = 0; k < n; ++k) {
        fv[k] = f(values[k]);
        if (!std::isfinite(fv[k]))
            throw NumericError("matrix_function: f undefined at eigenvalue " +
                               std::to_string(values[k]));
    }
    SymMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < n; ++k) s += vectors(i, k) * fv[k] * vectors(j, k);
            out.set(i, j, s);
        }
    }
    return out;
}

SymMatrix matrix_function(const SymMatrix& a, const std::function<double(double)>& f) {
    return sym_eig(a).reconstruct(f);
}

SymMatrix matrix_exp(const SymMatrix& a) {
    return matrix_function(a, [](double u) { return std::exp(u); });
}

SymMatrix matrix_sqrt_psd(const SymMatrix& a, double tol) {
    return matrix_function(a, [tol](double u) {
        if (u < -tol) return std::nan("");
        return std::sqrt(std::max(u, 0.0));
    });
}

SymMatrix matrix_inv_sqrt(const SymMatrix& a, double floor) {
    const auto eig = sym_eig(a);
    if (eig.lambda_min() <= floor)
        throw NumericError("matrix_inv_sqrt: near-singular matrix, lambda_min = " +
                           std::to_string(eig.lambda_min()));
    return eig.reconstruct([](double u) { return 1.0 / std::sqrt(u); });
}

double clip_eigenvalue(double u, double lo, double hi) { return std::min(std::max(u, lo), hi); }

double eig_proxy_max(const Vector& ev, double beta) {
    if (!(beta > 0)) throw NumericError("eig_proxy_max: beta must be positive");
    const double top = *std::max_element(ev.begin(), ev.end());
    double s = 0.0;
    for (double l : ev) s += std::exp(beta * (l - top));
    return top + std::log(s) / beta;
}

double eig_proxy_min(const Vector& ev, double beta) {
    Vector neg(ev.size());
    std::transform(ev.begin(), ev.end(), neg.begin(), [](double l) { return -l; });
    return -eig_proxy_max(neg, beta);
}

double eig_proxy_max(const SymMatrix& a, double beta) { return eig_proxy_max(sym_eig(a).values, beta); }

double eig_proxy_min(const SymMatrix& a, double beta) { return eig_proxy_min(sym_eig(a).values, beta); }

SymMatrix phi_gradient(const SymMatrix& a) { return matrix_exp(a); }

double phi_hessian_qform(const SymMatrix& a, const SymMatrix& h) {
    check_same_dim(a.dim(), h.dim(), "phi_hessian_qform");
    const std::size_t n = a.dim();
    const auto eig = sym_eig(a);
    const Matrix& q = eig.vectors;
    // H̃ = Qᵀ H Q
    const Matrix ht = q.transpose() * h.matrix() * q;
    static const QuadratureRule rule = gauss_legendre_unit(32);
    double total = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        const double s = rule.nodes[k];
        double g = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                g += std::exp((1.0 - s) * eig.values[i] + s * eig.values[j]) * ht(i, j) * ht(i, j);
        total += rule.weights[k] * g;
    }
    return total;
}

QuadratureRule gauss_legendre_unit(std::size_t n) {
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    // Newton iteration on P_n from the Chebyshev-like initial guesses.
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p1 = 1.0, p2 = 0.0;
            for (std::size_t j = 1; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / static_cast<double>(j);
            }
            dp = static_cast<double>(n) * (z * p1 - p2) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        const double w = 2.0 / ((1.0 - z * z) * dp * dp);
        // Map [-1,1] to [0,1].
        rule.nodes[i] = 0.5 * (1.0 - z);
        rule.nodes[n - 1 - i] = 0.5 * (1.0 + z);
        rule.weights[i] = 0.5 * w;
        rule.weights[n - 1 - i] = 0.5 * w;
    }
    return rule;
}

}  // namespace isoloc
