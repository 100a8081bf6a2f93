#pragma once

#include "endsum/integers.hpp"
#include "endsum/matrix.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace endsum {

/// Row echelon reduction of a copy of m over Z_p; returns rank.
/// If pivots is nonnull it receives the pivot column indices.
inline std::size_t rank_mod_p(const Matrix& m, std::int64_t p,
                              std::vector<std::size_t>* pivots = nullptr)
{
    Matrix a = m;
    const Int q(p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(i, j) = mod_nonneg(a(i, j), q);

    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        a.swap_rows(rank, piv);
        Int inv = inverse_mod(a(rank, col), q);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(rank, j) = mod_nonneg(a(rank, j) * inv, q);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, col) == 0)
                continue;
            Int f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) = mod_nonneg(a(i, j) - f * a(rank, j), q);
        }
        if (pivots)
            pivots->push_back(col);
        ++rank;
    }
    return rank;
}

/// Dimension of the span of the given row vectors over Z_p.
inline std::size_t span_dim_mod_p(const std::vector<std::vector<Int>>& rows,
                                  std::size_t width, std::int64_t p)
{
    Matrix m(rows.size(), width);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < width; ++j)
            m(i, j) = rows[i][j];
    return rank_mod_p(m, p);
}

/// Basis of the kernel of m over Z_p (as column vectors).
inline std::vector<std::vector<Int>> kernel_mod_p(const Matrix& m, std::int64_t p)
{
    Matrix a = m;
    const Int q(p);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(i, j) = mod_nonneg(a(i, j), q);

    std::vector<std::size_t> pivot_of_row;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < a.cols() && rank < a.rows(); ++col) {
        std::size_t piv = rank;
        while (piv < a.rows() && a(piv, col) == 0)
            ++piv;
        if (piv == a.rows())
            continue;
        a.swap_rows(rank, piv);
        Int inv = inverse_mod(a(rank, col), q);
        for (std::size_t j = col; j < a.cols(); ++j)
            a(rank, j) = mod_nonneg(a(rank, j) * inv, q);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == rank || a(i, col) == 0)
                continue;
            Int f = a(i, col);
            for (std::size_t j = col; j < a.cols(); ++j)
                a(i, j) = mod_nonneg(a(i, j) - f * a(rank, j), q);
        }
        pivot_of_row.push_back(col);
        ++rank;
    }

    std::vector<bool> is_pivot(a.cols(), false);
    for (std::size_t c : pivot_of_row)
        is_pivot[c] = true;

    std::vector<std::vector<Int>> basis;
    for (std::size_t free_col = 0; free_col < a.cols(); ++free_col) {
        if (is_pivot[free_col])
            continue;
        std::vector<Int> vec(a.cols(), Int(0));
        vec[free_col] = 1;
        for (std::size_t r = 0; r < rank; ++r)
            vec[pivot_of_row[r]] = mod_nonneg(-a(r, free_col), q);
        basis.push_back(std::move(vec));
    }
    return basis;
}

} // namespace endsum
