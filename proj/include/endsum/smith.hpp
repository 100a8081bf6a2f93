#pragma once

#include "endsum/integers.hpp"
#include "endsum/matrix.hpp"

#include <cstddef>
#include <vector>

namespace endsum {

struct SmithResult {
    Matrix d; ///< diagonal, nonnegative, d[i] | d[i+1]
    Matrix u; ///< unimodular row transform
    Matrix v; ///< unimodular column transform; u * input * v == d
};

/// Pivot selection is by minimal nonzero magnitude, which keeps intermediate
/// entries small on the matrices this library sees.
inline SmithResult smith_normal_form(const Matrix& input)
{
    const std::size_t r = input.rows();
    const std::size_t c = input.cols();
    Matrix a = input;
    Matrix u = Matrix::identity(r);
    Matrix v = Matrix::identity(c);

    const std::size_t steps = std::min(r, c);

    auto find_pivot = [&](std::size_t t, std::size_t& pi, std::size_t& pj) -> bool {
        bool found = false;
        Int best = 0;
        for (std::size_t i = t; i < r; ++i)
            for (std::size_t j = t; j < c; ++j) {
                if (a(i, j) == 0)
                    continue;
                Int m = abs_int(a(i, j));
                if (!found || m < best) {
                    found = true;
                    best = m;
                    pi = i;
                    pj = j;
                }
            }
        return found;
    };

    auto eliminate_at = [&](std::size_t t) {
        // Repeatedly reduce row/column t until only the pivot survives.
        for (;;) {
            std::size_t pi = t, pj = t;
            if (!find_pivot(t, pi, pj))
                return false;
            if (pi != t) {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if (pj != t) {
                a.swap_cols(t, pj);
                v.swap_cols(t, pj);
            }
            bool clean = true;
            for (std::size_t i = t + 1; i < r; ++i) {
                if (a(i, t) == 0)
                    continue;
                Int q = a(i, t) / a(t, t);
                if (q != 0) {
                    a.add_row(i, t, -q);
                    u.add_row(i, t, -q);
                }
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < c; ++j) {
                if (a(t, j) == 0)
                    continue;
                Int q = a(t, j) / a(t, t);
                if (q != 0) {
                    a.add_col(j, t, -q);
                    v.add_col(j, t, -q);
                }
                if (a(t, j) != 0)
                    clean = false;
            }
            if (clean) {
                bool rest_zero = true;
                for (std::size_t i = t + 1; i < r && rest_zero; ++i)
                    if (a(i, t) != 0)
                        rest_zero = false;
                for (std::size_t j = t + 1; j < c && rest_zero; ++j)
                    if (a(t, j) != 0)
                        rest_zero = false;
                if (rest_zero)
                    return true;
            }
        }
    };

    // Diagonalize; whenever the divisibility chain fails, fold the offending
    // column into its predecessor and diagonalize again.  Each fold strictly
    // shrinks a diagonal entry to a proper divisor, so this terminates.
    for (;;) {
        for (std::size_t t = 0; t < steps; ++t)
            if (!eliminate_at(t))
                break;
        bool chained = true;
        for (std::size_t t = 0; t + 1 < steps; ++t) {
            const Int& x = a(t, t);
            const Int& y = a(t + 1, t + 1);
            if (x != 0 && y != 0 && y % x != 0) {
                a.add_col(t, t + 1, 1);
                v.add_col(t, t + 1, 1);
                chained = false;
                break;
            }
        }
        if (chained)
            break;
    }

    for (std::size_t t = 0; t < steps; ++t) {
        if (a(t, t) < 0) {
            a.scale_row(t, -1);
            u.scale_row(t, -1);
        }
    }

    return SmithResult{a, u, v};
}

/// Diagonal entries of the Smith form, including zeros, length min(r, c).
inline std::vector<Int> smith_diagonal(const Matrix& m)
{
    SmithResult s = smith_normal_form(m);
    std::vector<Int> d;
    for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t)
        d.push_back(s.d(t, t));
    return d;
}

} // namespace endsum
