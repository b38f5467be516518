// Independent cross-checks for the exact linear algebra used everywhere
// else. Ranks are recomputed by fraction-free (Bareiss) elimination over
// the integers after clearing denominators row by row -- a different
// algorithm and code path from the reduced-row-echelon routines under
// test, so agreement is meaningful.
#pragma once

#include <sullivan/linalg.hpp>
#include <sullivan/rational.hpp>

#include <cstdlib>
#include <vector>

namespace oracle {

using sullivan::Int;
using sullivan::QMatrix;
using sullivan::Rational;

/// Clear denominators: scale each row by the least common multiple of its
/// entries' denominators. Row scaling preserves rank.
inline std::vector<std::vector<Int>> integerize(const QMatrix& m) {
    std::vector<std::vector<Int>> out(m.rows(), std::vector<Int>(m.cols(), 0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Int den = boost::multiprecision::denominator(m.at(i, j));
            lcm = boost::multiprecision::lcm(lcm, den);
        }
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rational scaled = m.at(i, j) * Rational(lcm);
            out[i][j] = boost::multiprecision::numerator(scaled);
        }
    }
    return out;
}

/// Rank by Bareiss fraction-free elimination with full pivot search down
/// the current column.
inline std::size_t rank(const QMatrix& m) {
    std::vector<std::vector<Int>> a = integerize(m);
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t r = 0;
    Int prev = 1;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pivot = r;
        while (pivot < rows && a[pivot][c] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) {
                const Int num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                a[i][j] = num / prev;  // divides exactly (Bareiss identity)
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

/// Determinant by Bareiss elimination; exact, integer intermediates.
inline Rational det(const QMatrix& m) {
    if (m.rows() != m.cols()) std::abort();
    const std::size_t n = m.rows();
    if (n == 0) return Rational(1);
    // Track the rational scale removed while integerizing each row.
    std::vector<std::vector<Int>> a(n, std::vector<Int>(n, 0));
    Rational scale = 1;
    for (std::size_t i = 0; i < n; ++i) {
        Int lcm = 1;
        for (std::size_t j = 0; j < n; ++j)
            lcm = boost::multiprecision::lcm(
                lcm, boost::multiprecision::denominator(m.at(i, j)));
        scale /= Rational(lcm);
        for (std::size_t j = 0; j < n; ++j)
            a[i][j] = boost::multiprecision::numerator(m.at(i, j) * Rational(lcm));
    }
    Int prev = 1;
    int sign = 1;
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t pivot = r;
        while (pivot < n && a[pivot][r] == 0) ++pivot;
        if (pivot == n) return Rational(0);
        if (pivot != r) {
            std::swap(a[pivot], a[r]);
            sign = -sign;
        }
        for (std::size_t i = r + 1; i < n; ++i) {
            for (std::size_t j = r + 1; j < n; ++j)
                a[i][j] = (a[r][r] * a[i][j] - a[i][r] * a[r][j]) / prev;
            a[i][r] = 0;
        }
        prev = a[r][r];
    }
    return Rational(sign) * Rational(a[n - 1][n - 1]) * scale;
}

}  // namespace oracle
