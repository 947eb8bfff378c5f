#ifndef SOLITON_LINALG_HPP
#define SOLITON_LINALG_HPP

#include <cassert>
#include <cstddef>
#include <optional>
#include <vector>

#include "soliton/rational.hpp"

namespace soliton {

// Dense exact-rational matrix, just big enough for the finite graded
// components this library solves over (dimensions stay in the dozens).
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational &at(std::size_t r, std::size_t c)
    {
        assert(r < rows_ && c < cols_);
        return a_[r * cols_ + c];
    }
    const Rational &at(std::size_t r, std::size_t c) const
    {
        assert(r < rows_ && c < cols_);
        return a_[r * cols_ + c];
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

using RatVec = std::vector<Rational>;

// Row echelon form in place; returns pivot column per pivot row.
inline std::vector<std::size_t> row_echelon(RatMatrix &m)
{
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t sel = row;
        while (sel < m.rows() && m.at(sel, col) == 0)
            ++sel;
        if (sel == m.rows())
            continue;
        for (std::size_t c = 0; c < m.cols(); ++c)
            std::swap(m.at(row, c), m.at(sel, c));
        Rational inv = m.at(row, col);
        for (std::size_t c = col; c < m.cols(); ++c)
            m.at(row, c) /= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0)
                continue;
            Rational f = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.at(r, c) -= f * m.at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RatMatrix m) { return row_echelon(m).size(); }

// Solves A x = b exactly. Returns nullopt when inconsistent; free variables
// (if any) are set to zero, so the result is the canonical pivot solution.
inline std::optional<RatVec> solve(const RatMatrix &a, const RatVec &b)
{
    assert(b.size() == a.rows());
    RatMatrix aug(a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            aug.at(r, c) = a.at(r, c);
        aug.at(r, a.cols()) = b[r];
    }
    auto pivots = row_echelon(aug);
    if (!pivots.empty() && pivots.back() == a.cols())
        return std::nullopt; // pivot in the augmented column
    RatVec x(a.cols());
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

// Basis of the null space of A.
inline std::vector<RatVec> kernel(RatMatrix m)
{
    auto pivots = row_echelon(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free])
            continue;
        RatVec v(m.cols());
        v[free] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -m.at(i, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Solves A x = b where the right-hand side entries live in a vector space V
// over the rationals (V needs +, -, scalar *, and is_zero()). The matrix is
// rational, so plain elimination applies with V-valued bookkeeping.
// Inconsistent systems return nullopt; free variables are set to zero.
template <class V>
std::optional<std::vector<V>> solve_with_rhs(RatMatrix a, std::vector<V> b,
                                             const V &zero)
{
    assert(b.size() == a.rows());
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
        std::size_t sel = row;
        while (sel < a.rows() && a.at(sel, col) == 0)
            ++sel;
        if (sel == a.rows())
            continue;
        for (std::size_t c = 0; c < a.cols(); ++c)
            std::swap(a.at(row, c), a.at(sel, c));
        std::swap(b[row], b[sel]);
        Rational inv = a.at(row, col);
        for (std::size_t c = col; c < a.cols(); ++c)
            a.at(row, c) /= inv;
        b[row] = b[row] * (Rational(1) / inv);
        for (std::size_t r = 0; r < a.rows(); ++r) {
            if (r == row || a.at(r, col) == 0)
                continue;
            Rational f = a.at(r, col);
            for (std::size_t c = col; c < a.cols(); ++c)
                a.at(r, c) -= f * a.at(row, c);
            b[r] = b[r] - b[row] * f;
        }
        pivots.push_back(col);
        ++row;
    }
    for (std::size_t r = row; r < a.rows(); ++r)
        if (!b[r].is_zero())
            return std::nullopt;
    std::vector<V> x(a.cols(), zero);
    for (std::size_t i = 0; i < pivots.size(); ++i)
        x[pivots[i]] = b[i];
    return x;
}

} // namespace soliton

#endif
