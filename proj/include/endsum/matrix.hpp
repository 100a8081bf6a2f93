#pragma once

#include "endsum/integers.hpp"

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

namespace endsum {

/// Dense integer matrix, row major.  Sized at construction; entries exact.
class Matrix {
public:
    Matrix() = default;

    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, Int(0))
    {
    }

    Matrix(std::initializer_list<std::initializer_list<Int>> init)
    {
        rows_ = init.size();
        cols_ = rows_ == 0 ? 0 : init.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("Matrix: ragged initializer");
            for (const auto& x : row)
                data_.push_back(x);
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix transposed() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    /// row[a] += c * row[b]
    void add_row(std::size_t a, std::size_t b, const Int& c)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) += c * (*this)(b, j);
    }

    /// col[a] += c * col[b]
    void add_col(std::size_t a, std::size_t b, const Int& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) += c * (*this)(i, b);
    }

    void scale_row(std::size_t a, const Int& c)
    {
        for (std::size_t j = 0; j < cols_; ++j)
            (*this)(a, j) *= c;
    }

    void scale_col(std::size_t a, const Int& c)
    {
        for (std::size_t i = 0; i < rows_; ++i)
            (*this)(i, a) *= c;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> data_;
};

inline Matrix operator*(const Matrix& a, const Matrix& b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("Matrix multiply: shape mismatch");
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0)
                continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

inline std::vector<Int> operator*(const Matrix& a, const std::vector<Int>& v)
{
    if (a.cols() != v.size())
        throw std::invalid_argument("Matrix-vector multiply: shape mismatch");
    std::vector<Int> out(a.rows(), Int(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0)
                out[i] += a(i, j) * v[j];
    return out;
}

/// Exact determinant by fraction-free (Bareiss) elimination.
inline Int determinant(Matrix m)
{
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant: matrix not square");
    const std::size_t n = m.rows();
    if (n == 0)
        return 1;
    Int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t piv = k + 1;
            while (piv < n && m(piv, k) == 0)
                ++piv;
            if (piv == n)
                return 0;
            m.swap_rows(k, piv);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

} // namespace endsum
