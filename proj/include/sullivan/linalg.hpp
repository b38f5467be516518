#ifndef SULLIVAN_LINALG_HPP
#define SULLIVAN_LINALG_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "sullivan/errors.hpp"
#include "sullivan/rational.hpp"

namespace sullivan {

/// Dense matrix over the rationals, row-major. Sized for the small systems
/// that come out of graded pieces of finite-type algebras; no attempt is made
/// at sparse storage or fraction-free pivoting.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    /// Assemble a matrix whose columns are the given coordinate vectors.
    /// Every column must have length `rows` (also when the list is empty,
    /// which yields a rows-by-0 matrix).
    static QMatrix from_columns(std::size_t rows,
                                const std::vector<std::vector<Rational>>& cols) {
        QMatrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw compute_error("from_columns: column length mismatch");
            for (std::size_t i = 0; i < rows; ++i) m.at(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t i, std::size_t j) {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }
    const Rational& at(std::size_t i, std::size_t j) const {
        assert(i < rows_ && j < cols_);
        return a_[i * cols_ + j];
    }

    std::vector<Rational> column(std::size_t j) const {
        std::vector<Rational> c(rows_);
        for (std::size_t i = 0; i < rows_; ++i) c[i] = at(i, j);
        return c;
    }

    std::vector<Rational> row(std::size_t i) const {
        std::vector<Rational> r(cols_);
        for (std::size_t j = 0; j < cols_; ++j) r[j] = at(i, j);
        return r;
    }

    bool is_zero() const {
        for (const auto& x : a_)
            if (x != 0) return false;
        return true;
    }

    bool is_identity() const {
        if (rows_ != cols_) return false;
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != (i == j ? 1 : 0)) return false;
        return true;
    }

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b) {
        if (a.cols() != b.rows())
            throw compute_error("matrix product: inner dimensions disagree");
        QMatrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k) {
                if (a.at(i, k) == 0) continue;
                for (std::size_t j = 0; j < b.cols(); ++j)
                    c.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return c;
    }

    friend std::vector<Rational> operator*(const QMatrix& a,
                                           const std::vector<Rational>& v) {
        if (a.cols() != v.size())
            throw compute_error("matrix-vector product: dimensions disagree");
        std::vector<Rational> w(a.rows());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t j = 0; j < a.cols(); ++j)
                if (a.at(i, j) != 0) w[i] += a.at(i, j) * v[j];
        return w;
    }

    friend QMatrix operator+(const QMatrix& a, const QMatrix& b) {
        if (a.rows() != b.rows() || a.cols() != b.cols())
            throw compute_error("matrix sum: dimensions disagree");
        QMatrix c(a.rows(), a.cols());
        for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] + b.a_[i];
        return c;
    }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const QMatrix& o) const { return !(*this == o); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

/// Reduced row echelon form together with the pivot bookkeeping.
///
/// The elimination order is fixed so that every derived object (solutions,
/// kernel bases, chosen cohomology representatives) is identical across runs
/// and platforms: columns are scanned left to right, and the pivot for a
/// column is the not-yet-used row of smallest index with a nonzero entry.
struct Rref {
    QMatrix m;
    std::vector<std::size_t> pivot_cols;  // ascending
    std::size_t rank() const { return pivot_cols.size(); }
};

inline Rref rref(QMatrix a) {
    Rref out;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < a.cols() && pivot_row < a.rows(); ++col) {
        std::size_t sel = pivot_row;
        while (sel < a.rows() && a.at(sel, col) == 0) ++sel;
        if (sel == a.rows()) continue;
        if (sel != pivot_row)
            for (std::size_t j = 0; j < a.cols(); ++j)
                std::swap(a.at(sel, j), a.at(pivot_row, j));
        const Rational inv = Rational(1) / a.at(pivot_row, col);
        for (std::size_t j = col; j < a.cols(); ++j) a.at(pivot_row, j) *= inv;
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == pivot_row || a.at(i, col) == 0) continue;
            const Rational f = a.at(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a.at(i, j) -= f * a.at(pivot_row, j);
        }
        out.pivot_cols.push_back(col);
        ++pivot_row;
    }
    out.m = std::move(a);
    return out;
}

inline std::size_t rank(const QMatrix& a) { return rref(a).rank(); }

/// Indices of a maximal independent set of columns (leftmost-greedy; these
/// are exactly the RREF pivot columns).
inline std::vector<std::size_t> pivot_columns(const QMatrix& a) {
    return rref(a).pivot_cols;
}

/// One particular solution of A x = b, with every free variable set to 0,
/// or nullopt when the system is inconsistent.
inline std::optional<std::vector<Rational>> solve(const QMatrix& a,
                                                  const std::vector<Rational>& b) {
    if (b.size() != a.rows())
        throw compute_error("solve: right-hand side has wrong length");
    QMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    const Rref r = rref(std::move(aug));
    std::vector<Rational> x(a.cols());
    for (std::size_t k = 0; k < r.pivot_cols.size(); ++k) {
        const std::size_t col = r.pivot_cols[k];
        if (col == a.cols()) return std::nullopt;  // pivot in the b column
        x[col] = r.m.at(k, a.cols());
    }
    return x;
}

/// Basis of the null space, one vector per free column, in ascending order
/// of free column index. The basis vector for free column f has a 1 in
/// position f.
inline std::vector<std::vector<Rational>> kernel_basis(const QMatrix& a) {
    const Rref r = rref(a);
    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : r.pivot_cols) is_pivot[c] = true;
    std::vector<std::vector<Rational>> basis;
    for (std::size_t f = 0; f < a.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(a.cols());
        v[f] = 1;
        for (std::size_t k = 0; k < r.pivot_cols.size(); ++k)
            v[r.pivot_cols[k]] = -r.m.at(k, f);
        basis.push_back(std::move(v));
    }
    assert(r.rank() + basis.size() == a.cols());  // rank + nullity
    return basis;
}

/// Exact inverse of a square matrix, or nullopt when singular.
inline std::optional<QMatrix> inverse(const QMatrix& a) {
    if (a.rows() != a.cols())
        throw compute_error("inverse: matrix is not square");
    const std::size_t n = a.rows();
    QMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = 1;
    }
    const Rref r = rref(std::move(aug));
    // Rank n with ascending pivots forces pivot n-1 at column n-1 exactly
    // when every pivot lies in the left block; n = 0 is trivially invertible.
    if (r.rank() < n || (n > 0 && r.pivot_cols[n - 1] != n - 1)) return std::nullopt;
    QMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.m.at(i, n + j);
    return inv;
}

}  // namespace sullivan

#endif
