#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <string>
#include <vector>

namespace cyclerank {

using Integer = mpz_class;
using IntVector = std::vector<Integer>;

/// Dense row-major matrix of arbitrary-precision integers.
///
/// Zero extents are permitted so that empty blocks (for example the B block
/// of p * identity) can be represented; every decomposition routine requires
/// a positive square matrix and checks for it.
class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    IntMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntMatrix identity(std::size_t n);
    static IntMatrix diagonal(const IntVector& diag);
    static IntMatrix from_rows(const std::vector<IntVector>& rows);
    static IntMatrix from_columns(const std::vector<IntVector>& cols);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    IntVector row(std::size_t i) const;
    IntVector column(std::size_t j) const;

    IntMatrix transpose() const;
    IntMatrix without(std::size_t row, std::size_t col) const;
    IntMatrix submatrix(const std::vector<std::size_t>& rows,
                        const std::vector<std::size_t>& cols) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    void negate_row(std::size_t i);
    void negate_col(std::size_t j);
    /// row[dst] += factor * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor);
    /// col[dst] += factor * col[src]
    void add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor);

    IntMatrix operator*(const IntMatrix& rhs) const;
    IntVector operator*(const IntVector& v) const;
    IntMatrix operator*(const Integer& s) const;

    bool operator==(const IntMatrix& rhs) const;
    /// Lexicographic row-major order; shape compares first.
    std::strong_ordering operator<=>(const IntMatrix& rhs) const;

    const std::vector<Integer>& data() const noexcept { return data_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

std::ostream& operator<<(std::ostream& os, const IntMatrix& m);

/// An element of Q^d stored as numerators over one positive denominator,
/// always in lowest terms.
class RationalVector {
public:
    RationalVector(IntVector numerators, Integer denominator);

    const IntVector& numerators() const noexcept { return num_; }
    const Integer& denominator() const noexcept { return den_; }
    std::size_t size() const noexcept { return num_.size(); }

    mpq_class operator[](std::size_t i) const { return mpq_class(num_[i], den_); }

    bool operator==(const RationalVector&) const = default;

private:
    IntVector num_;
    Integer den_;
};

Integer gcd(const Integer& a, const Integer& b);
/// Floor division and the matching non-negative remainder for b > 0.
Integer floor_div(const Integer& a, const Integer& b);
Integer mod_floor(const Integer& a, const Integer& b);

std::int64_t to_int64(const Integer& v);
bool fits_int64(const Integer& v);

} // namespace cyclerank
