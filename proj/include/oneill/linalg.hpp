#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "oneill/field_elem.hpp"
#include "oneill/ratfun.hpp"

namespace oneill {

inline bool scalar_is_zero(const FieldElem& x) { return x.is_zero(); }
inline bool scalar_is_zero(const RatFun& x) { return x.is_zero(); }
inline bool scalar_is_zero(const Poly& x) { return x.is_zero(); }
inline bool scalar_is_zero(double x) { return x == 0.0; }
inline bool scalar_is_zero(const Rational& x) { return x == 0; }

/// Multiplicative unit carrying the same context (radicand, chart) as x.
inline FieldElem one_like(const FieldElem& x) {
    return FieldElem(Rational(1), Rational(0), x.radicand());
}
inline RatFun one_like(const RatFun& x) { return RatFun::constant(x.chart(), FieldElem(1)); }
inline Poly one_like(const Poly& x) { return Poly::constant(x.chart(), FieldElem(1)); }
inline double one_like(double) { return 1.0; }
inline Rational one_like(const Rational&) { return Rational(1); }

template <class T>
T zero_like(const T& x) {
    return x - x;
}

/// Dense matrix over an exact scalar (field element, polynomial, or rational
/// function). Row-major; deliberately minimal.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, T fill) : r_(rows), c_(cols), a_(size_t(rows) * cols, fill) {}

    static Matrix identity(int n, const T& proto) {
        Matrix m(n, n, zero_like(proto));
        for (int i = 0; i < n; ++i) m(i, i) = one_like(proto);
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    T& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const T& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    std::vector<T> row(int i) const {
        return std::vector<T>(a_.begin() + size_t(i) * c_, a_.begin() + size_t(i + 1) * c_);
    }

    Matrix transposed() const {
        Matrix m(c_, r_, a_.empty() ? T() : zero_like(a_[0]));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
        return m;
    }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        if (x.c_ != y.r_) throw input_error("matrix product shape mismatch");
        Matrix m(x.r_, y.c_, zero_like(x(0, 0)));
        for (int i = 0; i < x.r_; ++i)
            for (int k = 0; k < x.c_; ++k) {
                if (scalar_is_zero(x(i, k))) continue;
                for (int j = 0; j < y.c_; ++j) m(i, j) += x(i, k) * y(k, j);
            }
        return m;
    }
    friend Matrix operator+(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw input_error("matrix sum shape mismatch");
        Matrix m = x;
        for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] += y.a_[i];
        return m;
    }
    friend Matrix operator-(const Matrix& x, const Matrix& y) {
        if (x.r_ != y.r_ || x.c_ != y.c_) throw input_error("matrix diff shape mismatch");
        Matrix m = x;
        for (size_t i = 0; i < m.a_.size(); ++i) m.a_[i] -= y.a_[i];
        return m;
    }

    std::vector<T> apply(const std::vector<T>& v) const {
        if (static_cast<int>(v.size()) != c_) throw input_error("matrix apply shape mismatch");
        std::vector<T> out(r_, zero_like(a_[0]));
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j)
                if (!scalar_is_zero((*this)(i, j))) out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    int r_ = 0, c_ = 0;
    std::vector<T> a_;
};

/// In-place reduced row echelon form over a field scalar. Returns pivot
/// column indices (their count is the rank).
template <class T>
std::vector<int> rref(Matrix<T>& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int p = -1;
        for (int i = row; i < m.rows(); ++i)
            if (!scalar_is_zero(m(i, col))) {
                p = i;
                break;
            }
        if (p < 0) continue;
        if (p != row)
            for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
        T pivot = m(row, col);
        for (int j = 0; j < m.cols(); ++j) m(row, j) = m(row, j) / pivot;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == row || scalar_is_zero(m(i, col))) continue;
            T f = m(i, col);
            for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(row, j);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

template <class T>
int rank_of(Matrix<T> m) {
    return static_cast<int>(rref(m).size());
}

/// Basis of the right null space { v : M v = 0 }, exact.
template <class T>
std::vector<std::vector<T>> null_space(Matrix<T> m) {
    if (m.rows() == 0 || m.cols() == 0) return {};
    const T zero = zero_like(m(0, 0));
    const T one = one_like(m(0, 0));
    std::vector<int> pivots = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<std::vector<T>> basis;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(m.cols(), zero);
        v[free] = one;
        for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = zero - m(static_cast<int>(r), free);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Particular solution of M x = b; nullopt when inconsistent.
template <class T>
std::optional<std::vector<T>> solve_linear(Matrix<T> m, const std::vector<T>& b) {
    if (m.rows() == 0) return std::vector<T>{};
    if (static_cast<int>(b.size()) != m.rows()) throw input_error("solve shape mismatch");
    const T zero = zero_like(m(0, 0));
    Matrix<T> aug(m.rows(), m.cols() + 1, zero);
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
        aug(i, m.cols()) = b[i];
    }
    std::vector<int> pivots = rref(aug);
    if (!pivots.empty() && pivots.back() == m.cols()) return std::nullopt;  // row 0 = 1
    std::vector<T> x(m.cols(), zero);
    for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(static_cast<int>(r), m.cols());
    return x;
}

/// Inverse over a field scalar via Gauss-Jordan.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    const int n = m.rows();
    if (n != m.cols()) throw input_error("inverse of non-square matrix");
    const T zero = zero_like(m(0, 0));
    Matrix<T> aug(n, 2 * n, zero);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
        aug(i, n + i) = one_like(m(0, 0));
    }
    std::vector<int> pivots = rref(aug);
    if (static_cast<int>(pivots.size()) != n || pivots.back() != n - 1)
        throw rank_error("matrix not invertible", static_cast<int>(pivots.size()));
    Matrix<T> r(n, n, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) r(i, j) = aug(i, n + j);
    return r;
}

/// Determinant by Laplace expansion with memoization over column subsets.
/// Ring scalar (no division); fine for the dimensions here (<= 7).
template <class T>
T determinant(const Matrix<T>& m) {
    if (m.rows() != m.cols()) throw input_error("determinant of non-square matrix");
    const int n = m.rows();
    if (n == 0) throw input_error("determinant of empty matrix");
    const T zero = zero_like(m(0, 0));
    std::vector<T> memo(size_t(1) << n, zero);
    std::vector<bool> known(size_t(1) << n, false);
    // Minor over columns `mask` uses the last popcount(mask) rows.
    auto compute = [&](auto&& self, unsigned mask) -> T {
        int k = __builtin_popcount(mask);
        int row = n - k;
        if (k == 1) return m(row, __builtin_ctz(mask));
        if (known[mask]) return memo[mask];
        T acc = zero;
        int idx = 0;
        for (int col = 0; col < n; ++col) {
            if (!(mask & (1u << col))) continue;
            if (!scalar_is_zero(m(row, col))) {
                T term = m(row, col) * self(self, mask & ~(1u << col));
                if (idx % 2 == 0)
                    acc += term;
                else
                    acc -= term;
            }
            ++idx;
        }
        known[mask] = true;
        memo[mask] = acc;
        return acc;
    };
    return compute(compute, (1u << n) - 1);
}

/// Adjugate: M * adj(M) = det(M) * I over any commutative ring scalar.
template <class T>
Matrix<T> adjugate(const Matrix<T>& m) {
    const int n = m.rows();
    if (n != m.cols()) throw input_error("adjugate of non-square matrix");
    const T zero = zero_like(m(0, 0));
    Matrix<T> r(n, n, zero);
    if (n == 1) {
        r(0, 0) = one_like(m(0, 0));
        return r;
    }
    Matrix<T> sub(n - 1, n - 1, zero);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int ri = 0;
            for (int a = 0; a < n; ++a) {
                if (a == j) continue;
                int ci = 0;
                for (int b = 0; b < n; ++b) {
                    if (b == i) continue;
                    sub(ri, ci) = m(a, b);
                    ++ci;
                }
                ++ri;
            }
            T d = determinant(sub);
            r(i, j) = ((i + j) % 2 == 0) ? d : zero - d;
        }
    return r;
}

template <class T>
T dot(const std::vector<T>& x, const std::vector<T>& y) {
    if (x.size() != y.size() || x.empty()) throw input_error("dot shape mismatch");
    T acc = zero_like(x[0]);
    for (size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
    return acc;
}

/// Gram form v^T G w.
template <class T>
T bilinear(const Matrix<T>& g, const std::vector<T>& v, const std::vector<T>& w) {
    return dot(v, g.apply(w));
}

}  // namespace oneill
