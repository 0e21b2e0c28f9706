#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace isoloc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

using Vector = std::vector<double>;

/// Dense row-major matrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const double> d);
    static Matrix from_rows(const std::vector<Vector>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    Vector column(std::size_t j) const;

    std::span<double> data() { return data_; }
    std::span<const double> data() const { return data_; }

    Matrix transpose() const;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(double s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, double s);
Matrix operator*(double s, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

/// Symmetric matrix. Every mutation writes both (i,j) and (j,i), so the
/// stored matrix is exactly symmetric at all times.
class SymMatrix {
public:
    SymMatrix() = default;
    explicit SymMatrix(std::size_t n, double fill = 0.0) : m_(n, n, fill) {}

    static SymMatrix identity(std::size_t n);
    static SymMatrix diagonal(std::span<const double> d);
    /// (M + Mᵀ)/2; throws if M is not square.
    static SymMatrix symmetrize(const Matrix& m);
    /// Requires max |M - Mᵀ| <= tol, then symmetrizes.
    static SymMatrix from_matrix(const Matrix& m, double tol = 1e-12);

    std::size_t dim() const { return m_.rows(); }
    double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }
    void set(std::size_t i, std::size_t j, double v) {
        m_(i, j) = v;
        m_(j, i) = v;
    }
    void add(std::size_t i, std::size_t j, double v);

    const Matrix& matrix() const { return m_; }

    SymMatrix& operator+=(const SymMatrix& o);
    SymMatrix& operator-=(const SymMatrix& o);
    SymMatrix& operator*=(double s);

private:
    Matrix m_;
};

SymMatrix operator+(SymMatrix a, const SymMatrix& b);
SymMatrix operator-(SymMatrix a, const SymMatrix& b);
SymMatrix operator*(SymMatrix a, double s);
SymMatrix operator*(double s, SymMatrix a);

double dot(std::span<const double> a, std::span<const double> b);
double norm(std::span<const double> a);
Vector operator+(const Vector& a, const Vector& b);
Vector operator-(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& a);
/// y += s * x
void axpy(double s, std::span<const double> x, std::span<double> y);

Vector matvec(const Matrix& a, std::span<const double> x);
Vector matvec(const SymMatrix& a, std::span<const double> x);
/// Aᵀ x
Vector matvec_t(const Matrix& a, std::span<const double> x);

/// Gauss-Jordan inverse with partial pivoting. Throws NumericError when singular.
Matrix inverse(const Matrix& a);
/// Solves A x = b by LU with partial pivoting. Throws NumericError when singular.
Vector solve(const Matrix& a, std::span<const double> b);

double max_abs(const Matrix& a);
double max_abs(std::span<const double> v);
double trace(const Matrix& a);
double trace(const SymMatrix& a);
/// tr(A B) for symmetric A, B (Frobenius inner product).
double frobenius_dot(const SymMatrix& a, const SymMatrix& b);
/// Largest singular value by power iteration on AᵀA.
double op_norm(const Matrix& a);

void check_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace isoloc
