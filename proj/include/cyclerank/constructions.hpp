#pragma once

#include "cyclerank/simplex.hpp"

#include <string>
#include <vector>

namespace cyclerank {

/// White tetrahedron conv{0, e1, e2, (1, p, q)}; requires 1 <= p < q and
/// gcd(p, q) = 1.
LatticeSimplex white(std::int64_t p, std::int64_t q);

/// conv{0, e1, e2, e1 + e2 + p e3}. Carries its PPowerForm when p is prime.
LatticeSimplex reeve(std::int64_t p);

/// c * S_d.
LatticeSimplex dilate(std::int64_t c, std::size_t d);

PPowerForm delta8_form();
PPowerForm delta9_form();

/// B made of the first `ell` vectors of {0,1}^k, in increasing binary order,
/// that have at least two ones. Requires k >= 2 and 1 <= ell <= 2^k - k - 1.
PPowerForm binary_construction(std::int64_t p, std::size_t k, std::size_t ell);

/// Rank-raising lift of an empty 3-power form with k rows and ell columns:
///
///     B~ = ( E_k  B    B     )
///          ( 1_k  1_l  2*1_l )
///
/// giving k + 1 rows and m = 2 ell + k columns.
PPowerForm lift3(const PPowerForm& form);

/// Dispatch by name: white p q | reeve p | dilate c d | delta8 | delta9 |
/// binary p k ell | lift (delta8 lifted `times` times, default once).
LatticeSimplex construct_named(const std::string& kind, const std::vector<std::int64_t>& params);

} // namespace cyclerank
