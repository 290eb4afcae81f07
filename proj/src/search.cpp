#include "cyclerank/search.hpp"

#include "cyclerank/errors.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace cyclerank {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 62;

std::uint64_t sat_pow(std::int64_t p, std::size_t k) {
    unsigned __int128 v = 1;
    for (std::size_t i = 0; i < k; ++i) {
        v *= static_cast<std::uint64_t>(p);
        if (v >= kSaturated)
            return kSaturated;
    }
    return static_cast<std::uint64_t>(v);
}

bool is_mod_p_multiple(const std::int64_t* a, const std::int64_t* c, std::size_t k,
                       std::int64_t p) {
    std::size_t lead = 0;
    while (lead < k && c[lead] == 0)
        ++lead;
    if (lead == k)
        return false;
    // mu = a[lead] / c[lead] mod p, by search since p is small in practice
    std::int64_t mu = 1;
    while (mu < p && (mu * c[lead]) % p != a[lead])
        ++mu;
    if (mu == p)
        return false;
    for (std::size_t i = 0; i < k; ++i)
        if ((mu * c[i]) % p != a[i])
            return false;
    return true;
}

// Combinations of {0..n-1} of size r, rank <-> tuple in lex order.
std::vector<std::size_t> unrank(std::uint64_t idx, std::size_t n, std::size_t r) {
    std::vector<std::size_t> c(r);
    std::size_t next = 0;
    for (std::size_t i = 0; i < r; ++i) {
        for (;; ++next) {
            const std::uint64_t below = binomial(n - 1 - next, r - 1 - i);
            if (idx < below)
                break;
            idx -= below;
        }
        c[i] = next++;
    }
    return c;
}

bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
    const std::size_t r = c.size();
    std::size_t i = r;
    while (i > 0 && c[i - 1] == n - r + i - 1)
        --i;
    if (i == 0)
        return false;
    ++c[i - 1];
    for (std::size_t j = i; j < r; ++j)
        c[j] = c[j - 1] + 1;
    return true;
}

struct ChunkResult {
    std::uint64_t begin = 0;
    std::uint64_t visited = 0;
    std::uint64_t pruned = 0;
    std::vector<std::pair<std::uint64_t, std::vector<std::size_t>>> hits;
};

template <typename Fn>
void run_workers(unsigned workers, std::size_t jobs, Fn&& fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(jobs)));
    if (workers <= 1) {
        for (std::size_t j = 0; j < jobs; ++j)
            fn(j);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t j; (j = next.fetch_add(1)) < jobs;) {
                try {
                    fn(j);
                } catch (...) {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

PPowerForm form_of(const SearchReport& rep, std::size_t i) {
    return PPowerForm(rep.p, rep.d - rep.r, rep.r, rep.survivors[i]);
}

} // namespace

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    unsigned __int128 v = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        v = v * (n - k + i) / i;
        if (v > std::numeric_limits<std::uint64_t>::max())
            return std::numeric_limits<std::uint64_t>::max();
    }
    return static_cast<std::uint64_t>(v);
}

std::string library_version() { return CYCLERANK_VERSION; }

IntMatrix ColumnPool::matrix() const {
    IntMatrix m(k, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            m(i, j) = static_cast<long>(columns[j][i]);
    return m;
}

std::uint64_t admissible_column_count(std::int64_t p, std::size_t k) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    const std::uint64_t total = sat_pow(p, k);
    if (total == kSaturated)
        return kSaturated;
    std::uint64_t imprimitive = 0;
    for (std::int64_t a = 1; a < p; ++a)
        for (std::int64_t b = 1; b < p; ++b)
            imprimitive += std::gcd(a, b) > 1;
    const unsigned __int128 removed =
        1 + static_cast<unsigned __int128>(k) * static_cast<std::uint64_t>(p - 1) +
        static_cast<unsigned __int128>(binomial(k, 2)) * imprimitive;
    return removed >= total ? 0 : total - static_cast<std::uint64_t>(removed);
}

ColumnPool admissible_columns(std::int64_t p, std::size_t k) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    if (k < 1)
        throw InvalidParams("column pool needs k >= 1");
    const std::uint64_t total = sat_pow(p, k);
    if (total > (std::uint64_t{1} << 28))
        throw CapExceeded("enumeration_cap", std::to_string(p) + "^" + std::to_string(k) +
                                                 " pool vectors");
    ColumnPool pool{p, k, {}};
    std::vector<std::int64_t> v(k, 0);
    for (std::uint64_t n = 1; n < total; ++n) {
        // increment, last entry least significant
        for (std::size_t i = k; i-- > 0;) {
            if (++v[i] < p)
                break;
            v[i] = 0;
        }
        std::size_t nonzero = 0;
        std::int64_t g = 0;
        for (std::int64_t x : v)
            if (x) {
                ++nonzero;
                g = std::gcd(g, x);
            }
        if (nonzero < 2 || (nonzero == 2 && g != 1))
            continue;
        pool.columns.push_back(v);
    }
    return pool;
}

bool subset_admissible(std::int64_t p, std::size_t k, std::size_t r,
                       std::span<const std::int64_t> b) {
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t c = 0; c < r; ++c)
            if (a != c && is_mod_p_multiple(b.data() + a * k, b.data() + c * k, k, p))
                return false;
    const auto t = static_cast<std::size_t>(std::min<std::int64_t>(p, static_cast<std::int64_t>(r)));
    return !has_zero_sum_subcollection(p, k, r, b, t);
}

bool subset_admissible(const PPowerForm& form) {
    const auto b = form.b_column_major();
    return subset_admissible(form.p(), form.k(), form.r(), b);
}

SearchReport census(std::int64_t p, std::size_t d, std::size_t r, const SearchOptions& options) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    if (d < 1 || r > d)
        throw InvalidParams("census needs 1 <= d and 0 <= r <= d");
    SearchReport rep;
    rep.p = p;
    rep.d = d;
    rep.r = r;
    rep.options = options;
    const std::size_t k = d - r;

    if (sat_pow(p, r) > options.order_cap)
        throw OrderCapExceeded(std::to_string(p) + "^" + std::to_string(r) + " cosets > " +
                               std::to_string(options.order_cap));
    std::uint64_t pool_size = 0;
    if (k > 0) {
        pool_size = admissible_column_count(p, k);
        if (pool_size > options.enumeration_cap)
            throw CapExceeded("enumeration_cap", "pool of " + std::to_string(pool_size) +
                                                     " columns > " +
                                                     std::to_string(options.enumeration_cap));
    }
    rep.candidates_total = binomial(pool_size, r);
    if (k == 0)
        rep.candidates_total = r == 0 ? 1 : 0;
    if (rep.candidates_total > options.enumeration_cap)
        throw CapExceeded("enumeration_cap", "C(" + std::to_string(pool_size) + ", " +
                                                 std::to_string(r) + ") candidates > " +
                                                 std::to_string(options.enumeration_cap));
    if (k > 0)
        rep.pool = admissible_columns(p, k);
    else
        rep.pool = ColumnPool{p, 0, {}};

    const auto t0 = Clock::now();
    const std::uint64_t total = rep.candidates_total;
    const unsigned workers = std::max(1u, options.workers);
    const std::uint64_t chunks =
        total == 0 ? 0 : std::min<std::uint64_t>(total, std::uint64_t{workers} * 16);
    std::vector<ChunkResult> results(chunks);
    std::atomic<std::uint64_t> first_hit{std::numeric_limits<std::uint64_t>::max()};

    run_workers(workers, chunks, [&](std::size_t c) {
        ChunkResult& out = results[c];
        out.begin = total * c / chunks;
        const std::uint64_t end = total * (c + 1) / chunks;
        std::vector<std::size_t> comb = unrank(out.begin, rep.pool.size(), r);
        std::vector<std::int64_t> b(k * r);
        for (std::uint64_t idx = out.begin; idx < end; ++idx) {
            if (options.stop_at_first && idx > first_hit.load(std::memory_order_relaxed))
                break;
            for (std::size_t j = 0; j < r; ++j)
                std::copy(rep.pool.columns[comb[j]].begin(), rep.pool.columns[comb[j]].end(),
                          b.begin() + static_cast<std::ptrdiff_t>(j * k));
            ++out.visited;
            if (options.prune && !subset_admissible(p, k, r, b)) {
                ++out.pruned;
            } else if (scan_p_power(p, k, r, b).empty) {
                out.hits.emplace_back(idx, comb);
                if (options.stop_at_first) {
                    std::uint64_t cur = first_hit.load();
                    while (idx < cur && !first_hit.compare_exchange_weak(cur, idx)) {
                    }
                    break;
                }
            }
            if (idx + 1 < end)
                next_combination(comb, rep.pool.size());
        }
    });

    for (const ChunkResult& cr : results) {
        rep.candidates_enumerated += cr.visited;
        rep.pruned += cr.pruned;
        for (const auto& [idx, comb] : cr.hits) {
            IntMatrix b(k, r);
            for (std::size_t j = 0; j < r; ++j)
                for (std::size_t i = 0; i < k; ++i)
                    b(i, j) = static_cast<long>(rep.pool.columns[comb[j]][i]);
            rep.survivors.push_back(std::move(b));
            if (options.stop_at_first)
                break;
        }
        // chunks before the first hit ran to completion, later ones are dropped
        if (options.stop_at_first && !rep.survivors.empty())
            break;
    }
    rep.complete = rep.candidates_enumerated == total;
    rep.enumeration_ms = ms_since(t0);

    for (std::size_t i = 0; i < rep.survivors.size(); ++i) {
        const PPowerForm f = form_of(rep, i);
        const EmptinessCertificate cert =
            is_empty(LatticeSimplex(f), options.order_cap, OraclePath::general);
        if (!cert.empty)
            throw Error("internal error: p-power kernel and coset oracle disagree");
        rep.survivor_zero_rows.push_back(check_necessary_conditions(f).zero_rows);
    }

    if (options.dedupe && !rep.survivors.empty()) {
        const auto t1 = Clock::now();
        std::vector<CanonicalForm> forms(rep.survivors.size());
        run_workers(workers, forms.size(), [&](std::size_t i) {
            forms[i] = canonical_form(LatticeSimplex(form_of(rep, i)), options.perm_cap);
        });
        std::map<IntMatrix, std::size_t> index;
        for (std::size_t i = 0; i < forms.size(); ++i) {
            auto [it, fresh] = index.emplace(forms[i].matrix, rep.classes.size());
            if (fresh)
                rep.classes.push_back({forms[i], {}});
            rep.classes[it->second].members.push_back(i);
        }
        rep.canonicalization_ms = ms_since(t1);
    }
    return rep;
}

BoundSheet crp_upper(std::int64_t p, std::size_t d) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    if (d < 1)
        throw InvalidParams("dimension must be positive");
    BoundSheet s;
    s.p = p;
    s.d = d;
    std::size_t log = 0;
    for (std::uint64_t pw = static_cast<std::uint64_t>(p); pw <= d; pw *= static_cast<std::uint64_t>(p))
        ++log;
    s.log_bound = d - log - 1;
    for (std::size_t r = 1; r < d; ++r)
        if (admissible_column_count(p, d - r) >= r)
            s.pool_bound = r;
    s.combined = std::min(s.log_bound, s.pool_bound);
    if (d >= 4) {
        s.linear_bound = d - 3;
        s.combined = std::min(s.combined, d - 3);
    }
    return s;
}

CrpResult crp_lower(std::int64_t p, std::size_t d, const SearchOptions& options) {
    CrpResult res;
    res.p = p;
    res.d = d;
    const BoundSheet upper = crp_upper(p, d);
    SearchOptions opt = options;
    opt.prune = true;
    opt.dedupe = false;
    opt.stop_at_first = true;
    for (std::size_t r = upper.combined; r > 0; --r) {
        CrpAttempt attempt;
        attempt.r = r;
        try {
            const SearchReport rep = census(p, d, r, opt);
            attempt.candidates = rep.candidates_enumerated;
            attempt.found = !rep.survivors.empty();
            res.attempts.push_back(attempt);
            if (attempt.found) {
                res.value = r;
                res.witness = PPowerForm(p, d - r, r, rep.survivors.front());
                return res;
            }
        } catch (const CapExceeded& e) {
            attempt.cap = e.cap();
            res.attempts.push_back(attempt);
            res.exact = false;
        }
    }
    // the standard simplex is empty with rank 0
    res.value = 0;
    res.witness = PPowerForm(p, d, 0, IntMatrix(d, 0));
    return res;
}

std::vector<TableRow> cr_e_table(std::size_t max_dim, const std::vector<std::int64_t>& primes,
                                 const SearchOptions& options) {
    if (primes.empty())
        throw InvalidParams("at least one prime is needed");
    std::vector<TableRow> rows;
    for (std::size_t d = 1; d <= max_dim; ++d) {
        TableRow row;
        row.d = d;
        std::size_t best = 0;
        for (std::int64_t p : primes) {
            CrpResult c = crp_lower(p, d, options);
            best = std::max(best, c.value);
            row.per_prime.emplace_back(p, std::move(c));
        }
        row.lower = rows.empty() ? best : std::max(best, rows.back().lower);
        row.upper = d >= 4 ? d - 3 : (d >= 2 ? d - 2 : 0);
        if (!rows.empty())
            row.upper = std::min(row.upper, rows.back().upper + 1);
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace cyclerank
