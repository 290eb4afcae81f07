#pragma once

#include "cyclerank/canonical.hpp"
#include "cyclerank/constructions.hpp"
#include "cyclerank/simplex.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace cyclerank {

/// Candidate columns for B: vectors of {0..p-1}^k with at least two nonzero
/// entries, primitive when they have exactly two. Ordered as base-p numbers
/// with the first entry most significant.
struct ColumnPool {
    std::int64_t p = 2;
    std::size_t k = 0;
    std::vector<std::vector<std::int64_t>> columns;

    std::size_t size() const noexcept { return columns.size(); }
    IntMatrix matrix() const;
};

ColumnPool admissible_columns(std::int64_t p, std::size_t k);

/// |admissible_columns(p, k)| without building it, saturating at 2^62.
std::uint64_t admissible_column_count(std::int64_t p, std::size_t k);

/// Subset-level prune. False when two columns are congruent up to a factor
/// mod p, or when some t <= min(p, r) of them have all row sums divisible
/// by p. Either way the simplex is not empty. `b` is column-major k x r.
bool subset_admissible(std::int64_t p, std::size_t k, std::size_t r,
                       std::span<const std::int64_t> b);
bool subset_admissible(const PPowerForm& form);

struct SearchOptions {
    bool prune = false;
    bool dedupe = false;
    /// Stop after the first empty candidate in enumeration order.
    bool stop_at_first = false;
    unsigned workers = 1;
    std::uint64_t order_cap = kDefaultOrderCap;
    std::uint64_t perm_cap = kDefaultPermCap;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
};

struct EquivalenceClass {
    CanonicalForm canonical;
    /// Indices into SearchReport::survivors; the first is the representative.
    std::vector<std::size_t> members;
};

struct SearchReport {
    std::int64_t p = 2;
    std::size_t d = 0;
    std::size_t r = 0;
    SearchOptions options;

    ColumnPool pool;
    std::uint64_t candidates_total = 0;
    std::uint64_t candidates_enumerated = 0;
    std::uint64_t pruned = 0;
    /// False when stop_at_first cut the enumeration short.
    bool complete = true;
    /// Empty candidates, in enumeration order (lex order of column index sets).
    std::vector<IntMatrix> survivors;
    std::vector<std::vector<std::size_t>> survivor_zero_rows;
    std::vector<EquivalenceClass> classes;

    double enumeration_ms = 0;
    double canonicalization_ms = 0;
};

/// Enumerates the r-subsets of admissible_columns(p, d - r) in lex order and
/// tests each with the p-power emptiness kernel. Every survivor is checked a
/// second time with the general coset oracle. Throws CapExceeded naming
/// enumeration_cap, order_cap or perm_cap.
SearchReport census(std::int64_t p, std::size_t d, std::size_t r, const SearchOptions& options);

/// Deterministic JSON form. `config` is echoed verbatim.
nlohmann::json report_to_json(const SearchReport& report, const nlohmann::json& config,
                              bool with_timings = true);

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

std::string library_version();

struct BoundSheet {
    std::int64_t p = 2;
    std::size_t d = 1;
    /// d - floor(log_p d) - 1
    std::size_t log_bound = 0;
    /// Largest r with |admissible_columns(p, d - r)| >= r.
    std::size_t pool_bound = 0;
    /// d - 3, only for d >= 4.
    std::optional<std::size_t> linear_bound;
    std::size_t combined = 0;
};

BoundSheet crp_upper(std::int64_t p, std::size_t d);

struct CrpAttempt {
    std::size_t r = 0;
    std::uint64_t candidates = 0;
    bool found = false;
    /// Name of the cap that stopped this rank, if any.
    std::string cap;
};

struct CrpResult {
    std::int64_t p = 2;
    std::size_t d = 1;
    std::size_t value = 0;
    std::optional<PPowerForm> witness;
    /// True when every rank above `value` was searched to the end, so that
    /// value = cr_p(d). Otherwise value is only a lower bound.
    bool exact = true;
    std::vector<CrpAttempt> attempts;
};

CrpResult crp_lower(std::int64_t p, std::size_t d, const SearchOptions& options);

struct TableRow {
    std::size_t d = 1;
    /// Best crp_lower over the configured primes, by prime.
    std::vector<std::pair<std::int64_t, CrpResult>> per_prime;
    std::size_t lower = 0;
    std::size_t upper = 0;
};

/// Bracket for cr_e(d), d = 1..max_dim: lower bounds from crp_lower made
/// monotone, upper bounds from d - 3 (d >= 4), d - 2 (d <= 3) and the
/// at-most-one jump per dimension.
std::vector<TableRow> cr_e_table(std::size_t max_dim, const std::vector<std::int64_t>& primes,
                                 const SearchOptions& options);

} // namespace cyclerank
