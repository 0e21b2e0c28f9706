#pragma once

#include <functional>

#include "isoloc/numkit/linalg.hpp"

namespace isoloc {

/// Eigenvalues sorted descending; column k of `vectors` is the eigenvector of values[k].
struct SpectralDecomposition {
    Vector values;
    Matrix vectors;

    double lambda_max() const { return values.front(); }
    double lambda_min() const { return values.back(); }
    /// Q diag(f(λ)) Qᵀ
    SymMatrix reconstruct(const std::function<double(double)>& f) const;
};

/// Cyclic Jacobi eigensolver. Throws NumericError on non-finite input.
SpectralDecomposition sym_eig(const SymMatrix& a);

/// f(A) = Σ f(λᵢ) uᵢ⊗uᵢ. Throws NumericError if f is not finite at some eigenvalue.
SymMatrix matrix_function(const SymMatrix& a, const std::function<double(double)>& f);

SymMatrix matrix_exp(const SymMatrix& a);
/// Symmetric PSD square root. Eigenvalues in [-tol, 0) are clipped to zero.
SymMatrix matrix_sqrt_psd(const SymMatrix& a, double tol = 1e-10);
/// A^{-1/2}; throws NumericError if λ_min <= floor.
SymMatrix matrix_inv_sqrt(const SymMatrix& a, double floor = 1e-8);

/// Spectral window clip u ↦ min{max{u, lo}, hi}.
double clip_eigenvalue(double u, double lo = 0.5, double hi = 2.0);

/// Max-eigenvalue proxy (1/β) log tr exp(βA), evaluated in shifted form.
double eig_proxy_max(const SymMatrix& a, double beta);
/// Min-eigenvalue proxy −f_β(−A).
double eig_proxy_min(const SymMatrix& a, double beta);
double eig_proxy_max(const Vector& eigenvalues, double beta);
double eig_proxy_min(const Vector& eigenvalues, double beta);

/// Gradient of A ↦ tr e^A, which is e^A.
SymMatrix phi_gradient(const SymMatrix& a);
/// Second derivative of tr e^A in direction H: ∫₀¹ tr(e^{(1−s)A} H e^{sA} H) ds,
/// by 32-node Gauss-Legendre quadrature in the eigenbasis of A.
double phi_hessian_qform(const SymMatrix& a, const SymMatrix& h);

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
struct QuadratureRule {
    Vector nodes;
    Vector weights;
};
QuadratureRule gauss_legendre_unit(std::size_t n);

}  // namespace isoloc
