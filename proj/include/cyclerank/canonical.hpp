#pragma once

#include "cyclerank/simplex.hpp"

namespace cyclerank {

struct CanonicalForm {
    IntMatrix matrix;

    bool operator==(const CanonicalForm&) const = default;
    auto operator<=>(const CanonicalForm& o) const { return matrix <=> o.matrix; }
};

/// U_k: the identity with column k replaced by all -1 (k >= 1); U_0 = E_d.
/// The rows of U_k A^T are the vertices of the simplex re-rooted at v_k.
IntMatrix reroot_matrix(std::size_t d, std::size_t k);

/// Row-major lexicographic minimum of lattice_basis(P U_k A^T) over all
/// permutation matrices P and k in {0..d}. Throws PermCapExceeded when
/// d! (d+1) > perm_cap.
CanonicalForm canonical_form(const LatticeSimplex& s,
                             std::uint64_t perm_cap = kDefaultPermCap);

/// True iff lattice_basis(P U_k B^T) = lattice_basis(A^T) for some (P, k).
bool are_equivalent(const LatticeSimplex& a, const LatticeSimplex& b,
                    std::uint64_t perm_cap = kDefaultPermCap);

} // namespace cyclerank
