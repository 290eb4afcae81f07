// Acceptance run. Prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails. Counts are exact; the time budgets are fixed below.

#include "properties.hpp"

#include "cyclerank/canonical.hpp"
#include "cyclerank/constructions.hpp"
#include "cyclerank/search.hpp"
#include "cyclerank/simplex.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace cyclerank;

namespace {

constexpr double kCensus8EmptinessBudget = 60;
constexpr double kCensus8CanonBudget = 900;
constexpr double kCensus9Budget = 300;
constexpr double kCr2Budget = 600;
constexpr double kLiftBudget = 60;
constexpr double kPropertyBudget = 300;

struct Check {
    std::ostringstream log;
    bool ok = true;

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            log << " [" << what << "]";
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int n, const std::string& title, const std::function<void(Check&)>& body) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.log << " [exception: " << e.what() << "]";
    }
    std::cout << "criterion " << n << ": " << (c.ok ? "PASS" : "FAIL") << "  " << title << " ("
              << std::fixed << std::setprecision(2) << seconds_since(t0) << " s)" << c.log.str()
              << std::endl;
    failures += !c.ok;
}

SearchOptions single_thread() {
    SearchOptions o;
    o.workers = 1;
    return o;
}

std::size_t floor_log2(std::size_t d) {
    std::size_t l = 0;
    while ((std::size_t{2} << l) <= d)
        ++l;
    return l;
}

void props_into(Check& c, const std::string& name, const props::Tally& t, std::size_t min_checked) {
    c.log << " " << name << "=" << t.checked;
    c.expect(t.checked >= min_checked, name + " ran too few cases");
    c.expect(t.ok(), name + ": " + t.summary());
}

} // namespace

int main() {
    criterion(1, "dim-8 census, p=3 r=5: 6188 candidates, 18 empty, one class equal to Delta_8",
              [](Check& c) {
                  SearchOptions o = single_thread();
                  o.dedupe = true;
                  const SearchReport rep = census(3, 8, 5, o);
                  c.log << " candidates=" << rep.candidates_enumerated
                        << " empty=" << rep.survivors.size() << " classes=" << rep.classes.size()
                        << " emptiness_s=" << rep.enumeration_ms / 1000
                        << " canon_s=" << rep.canonicalization_ms / 1000;
                  c.expect(rep.candidates_total == 6188 && rep.candidates_enumerated == 6188,
                           "candidate count");
                  c.expect(rep.survivors.size() == 18, "survivor count");
                  c.expect(rep.classes.size() == 1, "class count");
                  const auto t0 = std::chrono::steady_clock::now();
                  const CanonicalForm d8 = canonical_form(LatticeSimplex(delta8_form()));
                  const double d8_s = seconds_since(t0);
                  c.expect(!rep.classes.empty() && rep.classes[0].canonical == d8,
                           "class differs from Delta_8");
                  c.expect(rep.enumeration_ms / 1000 < kCensus8EmptinessBudget, "emptiness budget");
                  c.expect(rep.canonicalization_ms / 1000 + d8_s < kCensus8CanonBudget,
                           "canonicalization budget");
              });

    criterion(2, "dim-9 census, p=3 r=6: 12376 candidates, none empty", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const SearchReport rep = census(3, 9, 6, single_thread());
        c.log << " candidates=" << rep.candidates_enumerated << " empty=" << rep.survivors.size();
        c.expect(rep.candidates_total == 12376 && rep.candidates_enumerated == 12376,
                 "candidate count");
        c.expect(rep.survivors.empty(), "found an empty simplex");
        c.expect(seconds_since(t0) < kCensus9Budget, "time budget");
    });

    criterion(3, "cr_2(d) = d - floor(log2 d) - 1 for 3 <= d <= 12", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        c.log << " exhaustive:";
        for (std::size_t d = 3; d <= 7; ++d) {
            std::size_t best = 0;
            for (std::size_t r = 1; r < d; ++r)
                if (!census(2, d, r, single_thread()).survivors.empty())
                    best = r;
            c.log << " " << best;
            c.expect(best == d - floor_log2(d) - 1, "d=" + std::to_string(d));
        }
        c.log << " construction:";
        for (std::size_t d = 8; d <= 12; ++d) {
            const std::size_t ell = d - floor_log2(d) - 1;
            const PPowerForm f = binary_construction(2, d - ell, ell);
            const LatticeSimplex s(f.assemble());
            const EmptinessCertificate cert = is_empty(s, kDefaultOrderCap, OraclePath::general);
            const bool rank_ok = quotient_group(s).cyclicity_rank() == ell;
            const BoundSheet b = crp_upper(2, d);
            c.log << " " << ell;
            c.expect(cert.empty && rank_ok, "construction d=" + std::to_string(d));
            c.expect(b.pool_bound == ell && b.combined == ell, "pool bound d=" + std::to_string(d));
        }
        c.expect(seconds_since(t0) < kCr2Budget, "time budget");
    });

    criterion(4, "cr_e bracket 0,0,1,1,2,3,4,5 for d=1..8 and {5,6} for d=9", [](Check& c) {
        const auto rows = cr_e_table(9, {2, 3}, single_thread());
        const std::vector<std::size_t> lower = {0, 0, 1, 1, 2, 3, 4, 5, 5};
        const std::vector<std::size_t> upper = {0, 0, 1, 1, 2, 3, 4, 5, 6};
        c.expect(rows.size() == 9, "row count");
        c.log << " brackets:";
        for (std::size_t i = 0; i < rows.size() && i < 9; ++i) {
            c.log << " " << rows[i].lower << ".." << rows[i].upper;
            c.expect(rows[i].lower == lower[i] && rows[i].upper == upper[i],
                     "d=" + std::to_string(i + 1));
        }
    });

    criterion(5, "lift of Delta_8: dimension 17, rank 13, 1594322 cosets, all empty", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        const PPowerForm f = lift3(delta8_form());
        const LatticeSimplex s(f);
        const EmptinessCertificate fast = is_empty(s);
        const EmptinessCertificate general = is_empty(s, kDefaultOrderCap, OraclePath::general);
        const std::size_t rank = quotient_group(s).cyclicity_rank();
        const std::size_t cr2 = crp_upper(2, 17).combined;
        c.log << " dim=" << f.dim() << " rank=" << rank << " cosets=" << fast.cosets_checked
              << "/" << general.cosets_checked << " cr_2(17)=" << cr2;
        c.expect(f.dim() == 17 && rank == 13, "shape");
        c.expect(fast.empty && general.empty, "not empty");
        c.expect(fast.cosets_checked == 1594322 && general.cosets_checked == 1594322, "coset count");
        c.expect(cr2 == 12 && rank > cr2, "rank does not exceed cr_2(17)");
        c.expect(seconds_since(t0) < kLiftBudget, "time budget");
    });

    criterion(6, "pointwise regressions", [](Check& c) {
        const LatticeSimplex d9(delta9_form());
        c.expect(is_empty(d9).empty && quotient_group(d9).cyclicity_rank() == 5, "Delta_9");

        auto with_apex = [](long last) {
            return LatticeSimplex(IntMatrix{{1, 0, 0, 2}, {0, 1, 0, 2}, {0, 0, 1, 2}, {0, 0, 0, last}});
        };
        c.expect(is_empty(with_apex(3)).empty, "(2,2,2,3)");
        const EmptinessCertificate five = is_empty(with_apex(5));
        c.expect(!five.empty && five.witness == IntVector{1, 1, 1, 2}, "(2,2,2,5) witness");

        for (long p : {2, 3, 5}) {
            const LatticeSimplex ex(IntMatrix{{1, 0, 1, 0}, {0, 1, 1, 0}, {0, 0, p, 1}, {0, 0, 0, p}});
            const QuotientGroup g = quotient_group(ex);
            c.expect(g.cyclicity_rank() == 1 && g.order == p * p, "example p=" + std::to_string(p));
        }

        for (std::size_t d = 1; d <= 6; ++d) {
            const LatticeSimplex two(IntMatrix::identity(d) * Integer(2));
            const QuotientGroup g = quotient_group(two);
            c.expect(g.nontrivial_divisors == IntVector(d, Integer(2)), "2 S_d quotient");
            if (d >= 2)
                c.expect(!is_empty(two).empty, "2 S_d non-empty d=" + std::to_string(d));
            if (d >= 2 && d <= 4)
                c.expect(is_hollow(two), "2 S_d hollow d=" + std::to_string(d));
        }

        const std::set<std::vector<std::int64_t>> printed = {
            {1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 2, 0}, {2, 1, 0}, {1, 0, 2},
            {2, 0, 1}, {0, 1, 2}, {0, 2, 1}, {1, 1, 1}, {1, 1, 2}, {1, 2, 1},
            {2, 1, 1}, {1, 2, 2}, {2, 1, 2}, {2, 2, 1}, {2, 2, 2}};
        const ColumnPool pool = admissible_columns(3, 3);
        c.expect(pool.size() == 17 &&
                     std::set<std::vector<std::int64_t>>(pool.columns.begin(), pool.columns.end()) ==
                         printed,
                 "pool(3,3)");
    });

    criterion(7, "property suites, zero violations", [](Check& c) {
        const auto t0 = std::chrono::steady_clock::now();
        props_into(c, "linalg", props::linalg_properties(1, 1000), 1000);
        props_into(c, "coset_vs_bbox", props::coset_vs_bbox(2, 200), 200);
        props_into(c, "fast_vs_general", props::fast_vs_general(3, 300, 1'000'000), 300);
        props_into(c, "moves", props::equivalence_moves(4, 100), 100);
        props_into(c, "facet_intermediate", props::facet_and_intermediate(5, 40), 40);
        props_into(c, "white", props::white_family(), 45);
        c.expect(seconds_since(t0) < kPropertyBudget, "time budget");
    });

    std::cout << (failures ? "acceptance: FAIL" : "acceptance: PASS") << " (" << 7 - failures
              << "/7)" << std::endl;
    return failures ? 1 : 0;
}
