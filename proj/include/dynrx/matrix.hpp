#pragma once

#include "dynrx/scalars.hpp"

#include <utility>
#include <vector>

namespace dynrx {

template <class F>
class Matrix {
public:
    Matrix() = default;
    Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<size_t>(r) * c, F(0)) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = F(1);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    F& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
    const F& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

    Matrix operator+(const Matrix& o) const {
        check_same(o);
        Matrix m(*this);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] += o.a_[k];
        return m;
    }
    Matrix operator-(const Matrix& o) const {
        check_same(o);
        Matrix m(*this);
        for (size_t k = 0; k < a_.size(); ++k) m.a_[k] -= o.a_[k];
        return m;
    }
    Matrix operator-() const {
        Matrix m(*this);
        for (auto& x : m.a_) x = -x;
        return m;
    }
    Matrix operator*(const Matrix& o) const {
        if (c_ != o.r_) throw MathError("matrix shape mismatch in product");
        Matrix m(r_, o.c_);
        for (int i = 0; i < r_; ++i)
            for (int k = 0; k < c_; ++k) {
                const F& x = (*this)(i, k);
                if (is_zero(x)) continue;
                for (int j = 0; j < o.c_; ++j) {
                    const F& y = o(k, j);
                    if (!is_zero(y)) m(i, j) += x * y;
                }
            }
        return m;
    }
    Matrix scaled(const F& s) const {
        Matrix m(*this);
        for (auto& x : m.a_)
            if (!is_zero(x)) x *= s;
        return m;
    }
    Matrix& operator+=(const Matrix& o) { return *this = *this + o; }

    bool operator==(const Matrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }
    bool operator!=(const Matrix& o) const { return !(*this == o); }
    bool is_zero_matrix() const {
        for (auto& x : a_)
            if (!is_zero(x)) return false;
        return true;
    }
    bool is_identity() const {
        if (r_ != c_) return false;
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if ((*this)(i, j) != F(i == j ? 1 : 0)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix m(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    Matrix block(int r0, int c0, int nr, int nc) const {
        Matrix m(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
        return m;
    }

private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw MathError("matrix shape mismatch");
    }
    int r_ = 0, c_ = 0;
    std::vector<F> a_;
};

template <class F>
Matrix<F> kron(const Matrix<F>& a, const Matrix<F>& b) {
    Matrix<F> m(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j) {
            if (is_zero(a(i, j))) continue;
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    if (!is_zero(b(k, l))) m(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
    return m;
}

template <class G, class F, class Fn>
Matrix<G> map_entries(const Matrix<F>& m, Fn fn) {
    Matrix<G> out(m.rows(), m.cols());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) out(i, j) = fn(m(i, j));
    return out;
}

// Reduced row echelon form in place; returns pivot columns.
template <class F>
std::vector<int> rref(Matrix<F>& m, int ncols_to_reduce = -1) {
    int nc = ncols_to_reduce < 0 ? m.cols() : ncols_to_reduce;
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < nc && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!is_zero(m(i, col))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        F inv = F(1) / m(row, col);
        for (int j = col; j < m.cols(); ++j)
            if (!is_zero(m(row, j))) m(row, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || is_zero(m(i, col))) continue;
            F f = m(i, col);
            for (int j = col; j < m.cols(); ++j)
                if (!is_zero(m(row, j))) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

enum class SolveStatus { Ok, Inconsistent, Underdetermined };

// Solves A X = B exactly; X is returned only when the solution is unique.
template <class F>
SolveStatus solve(const Matrix<F>& A, const Matrix<F>& B, Matrix<F>& X) {
    int n = A.cols(), k = B.cols();
    Matrix<F> aug(A.rows(), n + k);
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = A(i, j);
        for (int j = 0; j < k; ++j) aug(i, n + j) = B(i, j);
    }
    auto piv = rref(aug, n);
    for (int i = static_cast<int>(piv.size()); i < aug.rows(); ++i)
        for (int j = 0; j < k; ++j)
            if (!is_zero(aug(i, n + j))) return SolveStatus::Inconsistent;
    if (static_cast<int>(piv.size()) < n) return SolveStatus::Underdetermined;
    X = Matrix<F>(n, k);
    for (int r = 0; r < n; ++r)
        for (int j = 0; j < k; ++j) X(piv[r], j) = aug(r, n + j);
    return SolveStatus::Ok;
}

template <class F>
int rank(Matrix<F> m) {
    return static_cast<int>(rref(m).size());
}

// Basis of the right kernel, one vector per column of the result.
template <class F>
Matrix<F> nullspace(Matrix<F> m) {
    int n = m.cols();
    auto piv = rref(m);
    std::vector<bool> is_piv(n, false);
    for (int p : piv) is_piv[p] = true;
    std::vector<int> free;
    for (int j = 0; j < n; ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix<F> out(n, static_cast<int>(free.size()));
    for (size_t f = 0; f < free.size(); ++f) {
        out(free[f], f) = F(1);
        for (size_t r = 0; r < piv.size(); ++r) out(piv[r], f) = -m(r, free[f]);
    }
    return out;
}

template <class F>
F det(Matrix<F> m) {
    if (m.rows() != m.cols()) throw MathError("determinant of non-square matrix");
    int n = m.rows();
    F d(1);
    for (int c = 0; c < n; ++c) {
        int p = -1;
        for (int i = c; i < n; ++i)
            if (!is_zero(m(i, c))) {
                p = i;
                break;
            }
        if (p < 0) return F(0);
        if (p != c) {
            for (int j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
            d = -d;
        }
        d *= m(c, c);
        F inv = F(1) / m(c, c);
        for (int i = c + 1; i < n; ++i) {
            if (is_zero(m(i, c))) continue;
            F f = m(i, c) * inv;
            for (int j = c; j < n; ++j)
                if (!is_zero(m(c, j))) m(i, j) -= f * m(c, j);
        }
    }
    return d;
}

// Throws SingularLambda when m is singular.
template <class F>
Matrix<F> inverse(const Matrix<F>& m, const std::string& what = "matrix") {
    Matrix<F> X;
    auto st = solve(m, Matrix<F>::identity(m.rows()), X);
    if (st != SolveStatus::Ok) throw SingularLambda(what, 0, what + " is singular");
    return X;
}

}  // namespace dynrx
