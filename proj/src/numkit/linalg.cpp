#include "isoloc/numkit/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "isoloc/numkit/eig.hpp"

namespace isoloc {

void check_same_dim(std::size_t a, std::size_t b, const char* what) {
    if (a != b) {
        throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                             " vs " + std::to_string(b) + ")");
    }
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        check_same_dim(r.size(), cols_, "Matrix literal");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

Matrix Matrix::from_rows(const std::vector<Vector>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        check_same_dim(rows[i].size(), m.cols(), "Matrix::from_rows");
        std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Matrix& Matrix::operator+=(const Matrix& o) {
    check_same_dim(rows_, o.rows_, "Matrix +=");
    check_same_dim(cols_, o.cols_, "Matrix +=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
    check_same_dim(rows_, o.rows_, "Matrix -=");
    check_same_dim(cols_, o.cols_, "Matrix -=");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

Matrix& Matrix::operator*=(double s) {
    for (double& v : data_) v *= s;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, double s) { return a *= s; }
Matrix operator*(double s, Matrix a) { return a *= s; }

Matrix operator*(const Matrix& a, const Matrix& b) {
    check_same_dim(a.cols(), b.rows(), "Matrix *");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            auto brow = b.row(k);
            auto crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

SymMatrix SymMatrix::identity(std::size_t n) {
    SymMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) s.m_(i, i) = 1.0;
    return s;
}

SymMatrix SymMatrix::diagonal(std::span<const double> d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.m_(i, i) = d[i];
    return s;
}

SymMatrix SymMatrix::symmetrize(const Matrix& m) {
    check_same_dim(m.rows(), m.cols(), "SymMatrix::symmetrize");
    SymMatrix s(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j) s.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    return s;
}

SymMatrix SymMatrix::from_matrix(const Matrix& m, double tol) {
    check_same_dim(m.rows(), m.cols(), "SymMatrix::from_matrix");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > tol) throw NumericError("matrix is not symmetric");
    return symmetrize(m);
}

void SymMatrix::add(std::size_t i, std::size_t j, double v) {
    m_(i, j) += v;
    if (i != j) m_(j, i) += v;
}

SymMatrix& SymMatrix::operator+=(const SymMatrix& o) {
    m_ += o.m_;
    return *this;
}
SymMatrix& SymMatrix::operator-=(const SymMatrix& o) {
    m_ -= o.m_;
    return *this;
}
SymMatrix& SymMatrix::operator*=(double s) {
    m_ *= s;
    return *this;
}

SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }
SymMatrix operator-(SymMatrix a, const SymMatrix& b) { return a -= b; }
SymMatrix operator*(SymMatrix a, double s) { return a *= s; }
SymMatrix operator*(double s, SymMatrix a) { return a *= s; }

double dot(std::span<const double> a, std::span<const double> b) {
    check_same_dim(a.size(), b.size(), "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(std::span<const double> a) { return std::sqrt(dot(a, a)); }

Vector operator+(const Vector& a, const Vector& b) {
    check_same_dim(a.size(), b.size(), "Vector +");
    Vector c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

Vector operator-(const Vector& a, const Vector& b) {
    check_same_dim(a.size(), b.size(), "Vector -");
    Vector c(a);
    for (std::size_t i = 0; i < c.size(); ++i) c[i] -= b[i];
    return c;
}

Vector operator*(double s, const Vector& a) {
    Vector c(a);
    for (double& v : c) v *= s;
    return c;
}

void axpy(double s, std::span<const double> x, std::span<double> y) {
    check_same_dim(x.size(), y.size(), "axpy");
    for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vector matvec(const Matrix& a, std::span<const double> x) {
    check_same_dim(a.cols(), x.size(), "matvec");
    Vector y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto r = a.row(i);
        double s = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

Vector matvec(const SymMatrix& a, std::span<const double> x) { return matvec(a.matrix(), x); }

Vector matvec_t(const Matrix& a, std::span<const double> x) {
    check_same_dim(a.rows(), x.size(), "matvec_t");
    Vector y(a.cols(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) axpy(x[i], a.row(i), y);
    return y;
}

Matrix inverse(const Matrix& a) {
    check_same_dim(a.rows(), a.cols(), "inverse");
    const std::size_t n = a.rows();
    Matrix w = a;
    Matrix inv = Matrix::identity(n);
    const double scale = std::max(max_abs(a), 1e-300);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(w(r, c)) > std::abs(w(piv, c))) piv = r;
        if (std::abs(w(piv, c)) <= 1e-14 * scale) throw NumericError("inverse: matrix is singular");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(w(c, j), w(piv, j));
                std::swap(inv(c, j), inv(piv, j));
            }
        }
        const double p = w(c, c);
        for (std::size_t j = 0; j < n; ++j) {
            w(c, j) /= p;
            inv(c, j) /= p;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c) continue;
            const double f = w(r, c);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) {
                w(r, j) -= f * w(c, j);
                inv(r, j) -= f * inv(c, j);
            }
        }
    }
    return inv;
}

Vector solve(const Matrix& a, std::span<const double> b) {
    check_same_dim(a.rows(), a.cols(), "solve");
    check_same_dim(a.rows(), b.size(), "solve");
    const std::size_t n = a.rows();
    Matrix w = a;
    Vector x(b.begin(), b.end());
    const double scale = std::max(max_abs(a), 1e-300);
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(w(r, c)) > std::abs(w(piv, c))) piv = r;
        if (std::abs(w(piv, c)) <= 1e-13 * scale) throw NumericError("solve: matrix is singular");
        if (piv != c) {
            for (std::size_t j = 0; j < n; ++j) std::swap(w(c, j), w(piv, j));
            std::swap(x[c], x[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = w(r, c) / w(c, c);
            if (f == 0.0) continue;
            for (std::size_t j = c; j < n; ++j) w(r, j) -= f * w(c, j);
            x[r] -= f * x[c];
        }
    }
    for (std::size_t i = n; i-- > 0;) {
        double s = x[i];
        for (std::size_t j = i + 1; j < n; ++j) s -= w(i, j) * x[j];
        x[i] = s / w(i, i);
    }
    return x;
}

double max_abs(const Matrix& a) { return max_abs(a.data()); }

double max_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

double trace(const Matrix& a) {
    check_same_dim(a.rows(), a.cols(), "trace");
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) s += a(i, i);
    return s;
}

double trace(const SymMatrix& a) { return trace(a.matrix()); }

double frobenius_dot(const SymMatrix& a, const SymMatrix& b) {
    return dot(a.matrix().data(), b.matrix().data());
}

double op_norm(const Matrix& a) {
    // Singular values of A are square roots of the eigenvalues of AᵀA.
    const SymMatrix ata = SymMatrix::symmetrize(a.transpose() * a);
    const auto eig = sym_eig(ata);
    return std::sqrt(std::max(eig.values.front(), 0.0));
}

}  // namespace isoloc
