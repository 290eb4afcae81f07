#include "cyclerank/int_matrix.hpp"

#include "cyclerank/errors.hpp"

#include <algorithm>
#include <limits>
#include <ostream>
#include <utility>

namespace cyclerank {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw DimensionMismatch("ragged initializer list");
        for (long v : r)
            data_.emplace_back(v);
    }
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& diag) {
    IntMatrix m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i)
        m(i, i) = diag[i];
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows) {
    const std::size_t nc = rows.empty() ? 0 : rows.front().size();
    IntMatrix m(rows.size(), nc);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != nc)
            throw DimensionMismatch("ragged rows");
        for (std::size_t j = 0; j < nc; ++j)
            m(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::from_columns(const std::vector<IntVector>& cols) {
    return from_rows(cols).transpose();
}

IntVector IntMatrix::row(std::size_t i) const {
    return IntVector(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

IntVector IntMatrix::column(std::size_t j) const {
    IntVector c(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            t(j, i) = (*this)(i, j);
    return t;
}

IntMatrix IntMatrix::without(std::size_t row, std::size_t col) const {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 0; i < rows_; ++i)
        if (i != row)
            rs.push_back(i);
    for (std::size_t j = 0; j < cols_; ++j)
        if (j != col)
            cs.push_back(j);
    return submatrix(rs, cs);
}

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t>& rows,
                               const std::vector<std::size_t>& cols) const {
    IntMatrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j)
            s(i, j) = (*this)(rows[i], cols[j]);
    return s;
}

void IntMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntMatrix::swap_cols(std::size_t a, std::size_t b) {
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t j = 0; j < cols_; ++j)
        mpz_neg((*this)(i, j).get_mpz_t(), (*this)(i, j).get_mpz_t());
}

void IntMatrix::negate_col(std::size_t j) {
    for (std::size_t i = 0; i < rows_; ++i)
        mpz_neg((*this)(i, j).get_mpz_t(), (*this)(i, j).get_mpz_t());
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        mpz_addmul((*this)(dst, j).get_mpz_t(), factor.get_mpz_t(),
                   (*this)(src, j).get_mpz_t());
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src, const Integer& factor) {
    if (factor == 0)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        mpz_addmul((*this)(i, dst).get_mpz_t(), factor.get_mpz_t(),
                   (*this)(i, src).get_mpz_t());
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
    if (cols_ != rhs.rows_)
        throw DimensionMismatch("matrix product shape mismatch");
    IntMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t l = 0; l < cols_; ++l) {
            const Integer& a = (*this)(i, l);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                mpz_addmul(out(i, j).get_mpz_t(), a.get_mpz_t(), rhs(l, j).get_mpz_t());
        }
    return out;
}

IntVector IntMatrix::operator*(const IntVector& v) const {
    if (cols_ != v.size())
        throw DimensionMismatch("matrix-vector shape mismatch");
    IntVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            mpz_addmul(out[i].get_mpz_t(), (*this)(i, j).get_mpz_t(), v[j].get_mpz_t());
    return out;
}

IntMatrix IntMatrix::operator*(const Integer& s) const {
    IntMatrix out = *this;
    for (auto& x : out.data_)
        x *= s;
    return out;
}

bool IntMatrix::operator==(const IntMatrix& rhs) const {
    return rows_ == rhs.rows_ && cols_ == rhs.cols_ && data_ == rhs.data_;
}

std::strong_ordering IntMatrix::operator<=>(const IntMatrix& rhs) const {
    if (auto c = rows_ <=> rhs.rows_; c != 0)
        return c;
    if (auto c = cols_ <=> rhs.cols_; c != 0)
        return c;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        const int c = cmp(data_[i], rhs.data_[i]);
        if (c < 0)
            return std::strong_ordering::less;
        if (c > 0)
            return std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::ostream& operator<<(std::ostream& os, const IntMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j)
                os << ' ';
            os << m(i, j);
        }
        os << '\n';
    }
    return os;
}

RationalVector::RationalVector(IntVector numerators, Integer denominator)
    : num_(std::move(numerators)), den_(std::move(denominator)) {
    if (den_ == 0)
        throw InvalidParams("zero denominator");
    if (den_ < 0) {
        den_ = -den_;
        for (auto& x : num_)
            x = -x;
    }
    Integer g = den_;
    for (const auto& x : num_)
        g = cyclerank::gcd(g, x);
    if (g > 1) {
        den_ /= g;
        for (auto& x : num_)
            mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
    }
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer floor_div(const Integer& a, const Integer& b) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

Integer mod_floor(const Integer& a, const Integer& b) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

bool fits_int64(const Integer& v) {
    static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
    static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
    return v >= lo && v <= hi;
}

std::int64_t to_int64(const Integer& v) {
    if (!fits_int64(v))
        throw InvalidParams("integer does not fit in 64 bits: " + v.get_str());
    if (v.fits_slong_p())
        return v.get_si();
    return std::stoll(v.get_str());
}

} // namespace cyclerank
