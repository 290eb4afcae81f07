#pragma once

#include "cyclerank/int_matrix.hpp"

namespace cyclerank {

/// H = U * A with H upper triangular, positive diagonal and every entry above
/// the diagonal reduced into [0, H(j,j)). U is unimodular.
struct HermiteDecomposition {
    IntMatrix H;
    IntMatrix U;
};

/// A = U * diag(divisors) * V with divisors[0] the largest elementary divisor,
/// each divisor divisible by the next one. V_inverse is carried along because
/// the coset enumeration needs it and inverting after the fact is wasteful.
struct SmithDecomposition {
    IntVector divisors;
    IntMatrix U;
    IntMatrix V;
    IntMatrix V_inverse;
};

/// Fraction-free (Bareiss) determinant of a square matrix.
Integer determinant(const IntMatrix& a);

/// Row-style Hermite normal form of a square invertible matrix.
/// Throws SingularMatrix when det(a) = 0.
HermiteDecomposition row_hnf(const IntMatrix& a);

/// Same H as row_hnf(a).H without accumulating the transform.
IntMatrix hermite_form(const IntMatrix& a);

/// Canonical lower-triangular basis L of the column lattice a * Z^d, i.e.
/// transpose(row_hnf(transpose(a)).H). Rows are reduced: 0 <= L(i,j) < L(i,i)
/// for j < i.
IntMatrix lattice_basis(const IntMatrix& a);

/// Smith normal form with transforms.
SmithDecomposition snf(const IntMatrix& a);

/// Exact solution of a * x = z.
RationalVector solve_exact(const IntMatrix& a, const IntVector& z);

/// Inverse of a unimodular matrix, exactly. Throws if |det| != 1.
IntMatrix unimodular_inverse(const IntMatrix& u);

} // namespace cyclerank
