#pragma once

#include "cyclerank/int_matrix.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace cyclerank {

inline constexpr std::uint64_t kDefaultOrderCap = 10'000'000;
/// 9! * 10, i.e. canonicalization admits d <= 9 by default.
inline constexpr std::uint64_t kDefaultPermCap = 3'628'800;
inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

bool is_prime(std::int64_t n);

/// A p-power simplex in block shape
///
///     H = ( E_k   B   )
///         ( 0    p E_r)
///
/// with B a k x r matrix over {0, ..., p-1}. Any such H has quotient group
/// (Z_p)^r, so the invariant is enforced by validating p and the entries of B.
class PPowerForm {
public:
    PPowerForm(std::int64_t p, IntMatrix b);
    PPowerForm(std::int64_t p, std::size_t k, std::size_t r, IntMatrix b);

    std::int64_t p() const noexcept { return p_; }
    std::size_t k() const noexcept { return k_; }
    std::size_t r() const noexcept { return r_; }
    std::size_t dim() const noexcept { return k_ + r_; }
    const IntMatrix& B() const noexcept { return b_; }

    /// Column-major copy of B as machine integers, the layout used by the
    /// enumeration kernels.
    std::vector<std::int64_t> b_column_major() const;

    IntMatrix assemble() const;

    bool operator==(const PPowerForm&) const = default;

private:
    std::int64_t p_;
    std::size_t k_;
    std::size_t r_;
    IntMatrix b_;
};

/// conv{0, v_1, ..., v_d} stored as the d x d matrix with columns v_i.
/// When built from a PPowerForm the form is kept and the vertex matrix is its
/// assembled block matrix.
class LatticeSimplex {
public:
    explicit LatticeSimplex(IntMatrix vertex_matrix);
    explicit LatticeSimplex(PPowerForm form);

    /// Translates the first point to the origin. Throws DegenerateSimplex for
    /// affinely dependent input.
    static LatticeSimplex from_vertices(const std::vector<IntVector>& points);

    std::size_t dim() const noexcept { return a_.rows(); }
    const IntMatrix& vertex_matrix() const noexcept { return a_; }
    const std::optional<PPowerForm>& p_power() const noexcept { return form_; }
    /// |det A|, the normalized volume.
    const Integer& volume() const noexcept { return volume_; }

    /// All d+1 vertices, origin first.
    std::vector<IntVector> vertices() const;

    /// Canonical bases of the edge lattice A Z^d and of the row lattice A^T Z^d.
    IntMatrix edge_lattice() const;
    IntMatrix row_lattice() const;

private:
    IntMatrix a_;
    Integer volume_;
    std::optional<PPowerForm> form_;
};

struct QuotientGroup {
    /// Nontrivial elementary divisors m_r | ... | m_1, smallest first.
    IntVector nontrivial_divisors;
    Integer order;

    std::size_t cyclicity_rank() const noexcept { return nontrivial_divisors.size(); }
    bool operator==(const QuotientGroup&) const = default;
};

QuotientGroup quotient_group(const LatticeSimplex& s);

struct EmptinessCertificate {
    bool empty = true;
    Integer group_order;
    std::uint64_t cosets_checked = 0;
    /// A lattice point of the simplex other than a vertex, when non-empty.
    std::optional<IntVector> witness;
};

enum class OraclePath { automatic, general };

/// Decides emptiness by walking the nonzero cosets of A^{-1} Z^d / Z^d. With
/// OraclePath::automatic a simplex carrying a PPowerForm uses the p-power
/// kernel instead. Throws OrderCapExceeded when |det A| > order_cap.
EmptinessCertificate is_empty(const LatticeSimplex& s,
                              std::uint64_t order_cap = kDefaultOrderCap,
                              OraclePath path = OraclePath::automatic);

bool is_hollow(const LatticeSimplex& s, std::uint64_t order_cap = kDefaultOrderCap);

struct PPowerScan {
    bool empty = true;
    std::uint64_t checked = 0;
    /// Digits n in {0..p-1}^r of the first violating coset, if any.
    std::vector<std::int64_t> violating_digits;
};

/// Emptiness kernel for block-shaped p-power simplices. `b` is column-major
/// k x r with entries in [0, p). Empty iff for every nonzero n in {0..p-1}^r
///     sum_j n_j + sum_i ((-(B n)_i) mod p) > p.
PPowerScan scan_p_power(std::int64_t p, std::size_t k, std::size_t r,
                        std::span<const std::int64_t> b);

/// Recognizes a matrix that is already in p-power block shape (r >= 1).
std::optional<PPowerForm> detect_p_power_form(const IntMatrix& h);

/// Brings a simplex whose quotient is (Z_p)^r into block shape. For a
/// unimodular simplex the prime must be supplied. Throws NotPPower otherwise.
PPowerForm to_p_power_form(const LatticeSimplex& s,
                           std::optional<std::int64_t> prime = std::nullopt);

/// Replaces every nontrivial elementary divisor of A^T by p, giving a simplex
/// whose row lattice contains that of `s`. Requires p | m_r.
LatticeSimplex reduce_to_p_power(const LatticeSimplex& s, std::int64_t p);

/// Deletes row and column j (1-based, k < j <= d) of the block matrix.
LatticeSimplex facet_simplex(const PPowerForm& form, std::size_t j);

struct NecessaryConditions {
    bool every_column_two_nonzero = true;      // (i)
    bool no_integral_multiples = true;         // (ii)
    bool two_support_columns_primitive = true; // (iii)
    bool no_zero_sum_subcollection = true;     // (v)
    /// Rows of B that are entirely zero; reported, not required.
    std::vector<std::size_t> zero_rows;

    bool all_hold() const noexcept {
        return every_column_two_nonzero && no_integral_multiples &&
               two_support_columns_primitive && no_zero_sum_subcollection;
    }
};

NecessaryConditions check_necessary_conditions(const PPowerForm& form);

/// True iff some t <= max_t columns of `b` (column-major, k rows) have all row
/// sums divisible by p.
bool has_zero_sum_subcollection(std::int64_t p, std::size_t k, std::size_t r,
                                std::span<const std::int64_t> b, std::size_t max_t);

nlohmann::json simplex_to_json(const LatticeSimplex& s);
LatticeSimplex simplex_from_json(const nlohmann::json& j);
nlohmann::json p_power_to_json(const PPowerForm& f);
PPowerForm p_power_from_json(const nlohmann::json& j);

} // namespace cyclerank
