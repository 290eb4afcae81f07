#include "cyclerank/exact_linalg.hpp"

#include "cyclerank/errors.hpp"

#include <utility>

namespace cyclerank {

namespace {

void require_square(const IntMatrix& a) {
    if (!a.is_square() || a.empty())
        throw DimensionMismatch("expected a non-empty square matrix");
}

// 2x2 integer transform with determinant 1, acting on a pair of rows or
// columns. For rows (j, i): row_j' = a00 row_j + a01 row_i,
//                           row_i' = a10 row_j + a11 row_i.
// For columns the same matrix acts from the right:
//   col_j' = a00 col_j + a10 col_i, col_i' = a01 col_j + a11 col_i.
struct Transform2 {
    Integer a00, a01, a10, a11;

    Transform2 inverse() const { return {a11, -a01, -a10, a00}; }
    Transform2 transposed() const { return {a00, a10, a01, a11}; }
};

// Transform for rows that maps (a, b) in one column to (g, 0).
Transform2 gcd_transform(const Integer& a, const Integer& b) {
    if (a != 0 && mpz_divisible_p(b.get_mpz_t(), a.get_mpz_t())) {
        Integer q;
        mpz_divexact(q.get_mpz_t(), b.get_mpz_t(), a.get_mpz_t());
        return {1, 0, -q, 1};
    }
    Integer g, s, t;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    Integer bg, ag;
    mpz_divexact(bg.get_mpz_t(), b.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(ag.get_mpz_t(), a.get_mpz_t(), g.get_mpz_t());
    return {s, t, -bg, ag};
}

void combine(Integer& x, Integer& y, const Transform2& t, Integer& tmp) {
    // x' = a00 x + a01 y ; y' = a10 x + a11 y
    tmp = t.a00 * x;
    mpz_addmul(tmp.get_mpz_t(), t.a01.get_mpz_t(), y.get_mpz_t());
    y *= t.a11;
    mpz_addmul(y.get_mpz_t(), t.a10.get_mpz_t(), x.get_mpz_t());
    mpz_swap(x.get_mpz_t(), tmp.get_mpz_t());
}

void apply_rows(IntMatrix& m, std::size_t j, std::size_t i, const Transform2& t) {
    Integer tmp;
    for (std::size_t c = 0; c < m.cols(); ++c)
        combine(m(j, c), m(i, c), t, tmp);
}

void apply_cols(IntMatrix& m, std::size_t j, std::size_t i, const Transform2& t) {
    const Transform2 tt = t.transposed();
    Integer tmp;
    for (std::size_t r = 0; r < m.rows(); ++r)
        combine(m(r, j), m(r, i), tt, tmp);
}

template <bool Track>
void hnf_in_place(IntMatrix& h, IntMatrix* u) {
    const std::size_t n = h.rows();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = j + 1; i < n; ++i) {
            if (h(i, j) == 0)
                continue;
            const Transform2 t = gcd_transform(h(j, j), h(i, j));
            apply_rows(h, j, i, t);
            if constexpr (Track)
                apply_rows(*u, j, i, t);
        }
        if (h(j, j) == 0)
            throw SingularMatrix();
        if (h(j, j) < 0) {
            h.negate_row(j);
            if constexpr (Track)
                u->negate_row(j);
        }
        for (std::size_t i = 0; i < j; ++i) {
            Integer q = floor_div(h(i, j), h(j, j));
            if (q == 0)
                continue;
            q = -q;
            h.add_row_multiple(i, j, q);
            if constexpr (Track)
                u->add_row_multiple(i, j, q);
        }
    }
}

} // namespace

Integer determinant(const IntMatrix& a) {
    require_square(a);
    const std::size_t n = a.rows();
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
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
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Integer v = m(i, j) * m(k, k);
                mpz_submul(v.get_mpz_t(), m(i, k).get_mpz_t(), m(k, j).get_mpz_t());
                mpz_divexact(m(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
            }
            m(i, k) = 0;
        }
        prev = m(k, k);
    }
    Integer d = m(n - 1, n - 1);
    return sign > 0 ? d : Integer(-d);
}

HermiteDecomposition row_hnf(const IntMatrix& a) {
    require_square(a);
    HermiteDecomposition out{a, IntMatrix::identity(a.rows())};
    hnf_in_place<true>(out.H, &out.U);
    return out;
}

IntMatrix hermite_form(const IntMatrix& a) {
    require_square(a);
    IntMatrix h = a;
    hnf_in_place<false>(h, nullptr);
    return h;
}

IntMatrix lattice_basis(const IntMatrix& a) {
    return hermite_form(a.transpose()).transpose();
}

SmithDecomposition snf(const IntMatrix& a) {
    require_square(a);
    const std::size_t n = a.rows();
    IntMatrix s = a;
    IntMatrix u = IntMatrix::identity(n);
    IntMatrix v = IntMatrix::identity(n);
    IntMatrix vinv = IntMatrix::identity(n);

    // Invariant: a = u * s * v and vinv = v^{-1}.
    auto row_op = [&](std::size_t j, std::size_t i, const Transform2& t) {
        apply_rows(s, j, i, t);
        apply_cols(u, j, i, t.inverse());
    };
    auto col_op = [&](std::size_t j, std::size_t i, const Transform2& t) {
        // t is given in row form; as a column operation it is t^T.
        const Transform2 tc = t.transposed();
        apply_cols(s, j, i, tc);
        apply_cols(vinv, j, i, tc);
        apply_rows(v, j, i, tc.inverse());
    };

    for (std::size_t t = 0; t < n; ++t) {
        // Smallest nonzero entry of the trailing block as pivot.
        std::size_t pr = n, pc = n;
        for (std::size_t i = t; i < n; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (s(i, j) != 0 && (pr == n || mpz_cmpabs(s(i, j).get_mpz_t(), s(pr, pc).get_mpz_t()) < 0)) {
                    pr = i;
                    pc = j;
                }
        if (pr == n)
            throw SingularMatrix();
        if (pr != t) {
            s.swap_rows(t, pr);
            u.swap_cols(t, pr);
        }
        if (pc != t) {
            s.swap_cols(t, pc);
            vinv.swap_cols(t, pc);
            v.swap_rows(t, pc);
        }

        for (;;) {
            for (std::size_t i = t + 1; i < n; ++i)
                if (s(i, t) != 0)
                    row_op(t, i, gcd_transform(s(t, t), s(i, t)));
            bool row_clear = true;
            for (std::size_t j = t + 1; j < n; ++j)
                if (s(t, j) != 0) {
                    col_op(t, j, gcd_transform(s(t, t), s(t, j)));
                    row_clear = false;
                }
            if (!row_clear) {
                bool col_clear = true;
                for (std::size_t i = t + 1; i < n; ++i)
                    col_clear = col_clear && s(i, t) == 0;
                if (!col_clear)
                    continue;
            }
            // Pivot must divide the whole trailing block.
            std::size_t bad = n;
            for (std::size_t i = t + 1; i < n && bad == n; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(s(i, j).get_mpz_t(), s(t, t).get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == n)
                break;
            row_op(t, bad, Transform2{1, 1, 0, 1});
        }
        if (s(t, t) < 0) {
            s.negate_row(t);
            u.negate_col(t);
        }
    }

    // Ascending chain -> descending (largest divisor first).
    SmithDecomposition out;
    out.divisors.resize(n);
    out.U = IntMatrix(n, n);
    out.V = IntMatrix(n, n);
    out.V_inverse = IntMatrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t r = n - 1 - i;
        out.divisors[i] = s(r, r);
        for (std::size_t k = 0; k < n; ++k) {
            out.U(k, i) = u(k, r);
            out.V(i, k) = v(r, k);
            out.V_inverse(k, i) = vinv(k, r);
        }
    }
    return out;
}

RationalVector solve_exact(const IntMatrix& a, const IntVector& z) {
    require_square(a);
    const std::size_t n = a.rows();
    if (z.size() != n)
        throw DimensionMismatch("right-hand side has wrong length");
    std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + 1));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            m[i][j] = a(i, j);
        m[i][n] = z[i];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m[piv][k] == 0)
            ++piv;
        if (piv == n)
            throw SingularMatrix();
        std::swap(m[k], m[piv]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || m[i][k] == 0)
                continue;
            const mpq_class f = m[i][k] / m[k][k];
            for (std::size_t j = k; j <= n; ++j)
                m[i][j] -= f * m[k][j];
        }
    }
    Integer den = 1;
    std::vector<mpq_class> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m[i][n] / m[i][i];
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x[i].get_den_mpz_t());
    }
    IntVector num(n);
    for (std::size_t i = 0; i < n; ++i)
        num[i] = x[i].get_num() * (den / x[i].get_den());
    return RationalVector(std::move(num), std::move(den));
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
    HermiteDecomposition d = row_hnf(u);
    if (d.H != IntMatrix::identity(u.rows()))
        throw InvalidParams("matrix is not unimodular");
    return d.U;
}

} // namespace cyclerank
