#include "properties.hpp"

#include "oracles.hpp"

#include "cyclerank/canonical.hpp"
#include "cyclerank/constructions.hpp"
#include "cyclerank/exact_linalg.hpp"
#include "cyclerank/simplex.hpp"

#include <numeric>
#include <random>
#include <sstream>

using namespace cyclerank;

namespace props {

namespace {

std::string show(const IntMatrix& m) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m(i, j);
    }
    os << "]";
    return os.str();
}

bool is_hnf(const IntMatrix& h) {
    for (std::size_t i = 0; i < h.rows(); ++i)
        for (std::size_t j = 0; j < h.cols(); ++j) {
            if (i > j && h(i, j) != 0)
                return false;
            if (i == j && h(i, j) <= 0)
                return false;
            if (i < j && (h(i, j) < 0 || h(i, j) >= h(j, j)))
                return false;
        }
    return true;
}

IntMatrix nonsingular(std::mt19937_64& rng, std::size_t d, int bound) {
    for (;;) {
        IntMatrix a = oracle::random_matrix(rng, d, d, -bound, bound);
        if (oracle::leibniz_det(a) != 0)
            return a;
    }
}

// Random simplex with 1 <= |det| <= max_det and small entries, so that its
// bounding box stays scannable.
IntMatrix small_simplex(std::mt19937_64& rng, std::size_t d, long max_det) {
    std::uniform_int_distribution<int> diag(1, 5);
    for (;;) {
        IntMatrix a;
        if (rng() % 2) {
            a = oracle::random_matrix(rng, d, d, -3, 3);
        } else {
            a = IntMatrix(d, d);
            for (std::size_t j = 0; j < d; ++j) {
                a(j, j) = diag(rng);
                for (std::size_t i = 0; i < j; ++i)
                    a(i, j) = static_cast<long>(rng() % a(j, j).get_ui());
            }
            a = oracle::random_unimodular(rng, d, 3) * a;
        }
        const Integer det = abs(oracle::leibniz_det(a));
        if (det == 0 || det > max_det)
            continue;
        bool small = true;
        for (const auto& x : a.data())
            small = small && abs(x) <= 6;
        if (small)
            return a;
    }
}

bool witness_ok(const LatticeSimplex& s, const IntVector& z) {
    const RationalVector lam = solve_exact(s.vertex_matrix(), z);
    mpq_class sum = 0;
    for (std::size_t i = 0; i < lam.size(); ++i) {
        if (lam[i] < 0)
            return false;
        sum += lam[i];
    }
    if (sum > 1)
        return false;
    for (const auto& v : s.vertices())
        if (v == z)
            return false;
    return true;
}

// Vertex matrix of the same simplex re-rooted at column k (1-based) with the
// remaining vertices in a permuted order.
IntMatrix reroot(const IntMatrix& a, std::size_t k, const std::vector<std::size_t>& order) {
    const std::size_t d = a.rows();
    std::vector<IntVector> pts;
    pts.emplace_back(d);
    for (std::size_t j = 0; j < d; ++j)
        pts.push_back(a.column(j));
    std::vector<IntVector> cols;
    for (std::size_t v : order) {
        const std::size_t idx = v < k ? v : v + 1; // skip the new root
        IntVector c(d);
        for (std::size_t i = 0; i < d; ++i)
            c[i] = pts[idx][i] - pts[k][i];
        cols.push_back(c);
    }
    return IntMatrix::from_columns(cols);
}

void check_necessary(Tally& t, const PPowerForm& f, const std::string& tag) {
    const NecessaryConditions nc = check_necessary_conditions(f);
    t.expect(nc.all_hold(), tag + ": empty form violates a necessary condition " + show(f.B()));
}

} // namespace

std::string Tally::summary() const {
    std::ostringstream os;
    os << checked << " checked, " << failures.size() << " failures";
    for (const auto& f : failures)
        os << "\n  " << f;
    return os.str();
}

Tally linalg_properties(std::uint64_t seed, std::size_t count) {
    Tally t;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    for (std::size_t n = 0; n < count; ++n) {
        const std::size_t d = dim(rng);
        const IntMatrix a = nonsingular(rng, d, 9);
        const std::string tag = "A=" + show(a);
        const Integer det = oracle::leibniz_det(a);

        t.expect(determinant(a) == det, tag + ": determinant");
        const HermiteDecomposition h = row_hnf(a);
        t.expect(is_hnf(h.H), tag + ": HNF shape");
        t.expect(h.U * a == h.H, tag + ": U A = H");
        t.expect(abs(determinant(h.U)) == 1, tag + ": U unimodular");
        t.expect(h.H == oracle::naive_hnf(a), tag + ": HNF differs from Euclid oracle");
        Integer diag = 1;
        for (std::size_t i = 0; i < d; ++i)
            diag *= h.H(i, i);
        t.expect(diag == abs(det), tag + ": HNF diagonal product");
        const IntMatrix w = oracle::random_unimodular(rng, d);
        t.expect(hermite_form(w * a) == h.H, tag + ": HNF not invariant under W A");

        const SmithDecomposition s = snf(a);
        Integer prod = 1;
        for (std::size_t i = 0; i < d; ++i) {
            prod *= s.divisors[i];
            t.expect(s.divisors[i] > 0, tag + ": divisor sign");
            if (i + 1 < d)
                t.expect(mpz_divisible_p(s.divisors[i].get_mpz_t(), s.divisors[i + 1].get_mpz_t()) != 0,
                         tag + ": divisibility chain");
        }
        t.expect(prod == abs(det), tag + ": divisor product");
        t.expect(s.U * IntMatrix::diagonal(s.divisors) * s.V == a, tag + ": A = U S V");
        t.expect(s.V * s.V_inverse == IntMatrix::identity(d), tag + ": V V^-1");
        t.expect(abs(determinant(s.U)) == 1 && abs(determinant(s.V)) == 1,
                 tag + ": SNF transforms unimodular");
        t.expect(snf(a.transpose()).divisors == s.divisors, tag + ": divisors of transpose");
        if (d <= 5)
            t.expect(oracle::determinantal_divisors(a) == s.divisors,
                     tag + ": determinantal divisors");

        const IntMatrix l = lattice_basis(a);
        t.expect(lattice_basis(a * w) == l, tag + ": lattice_basis not invariant under A W");
        t.expect(lattice_basis(l) == l, tag + ": lattice_basis not idempotent");
        t.expect(l == oracle::naive_lattice_basis(a), tag + ": lattice_basis differs from oracle");

        const IntMatrix z = oracle::random_matrix(rng, d, 1, -20, 20);
        const RationalVector x = solve_exact(a, z.column(0));
        IntVector back = a * x.numerators();
        bool round = true;
        for (std::size_t i = 0; i < d; ++i)
            round = round && back[i] == z(i, 0) * x.denominator();
        t.expect(round, tag + ": solve_exact round trip");
        t.expect(mpz_divisible_p(det.get_mpz_t(), x.denominator().get_mpz_t()) != 0,
                 tag + ": solve_exact denominator divides det");
        ++t.checked;
    }
    return t;
}

Tally coset_vs_bbox(std::uint64_t seed, std::size_t count) {
    Tally t;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 4);
    for (std::size_t n = 0; n < count; ++n) {
        const IntMatrix a = small_simplex(rng, dim(rng), 60);
        const std::string tag = "A=" + show(a);
        const LatticeSimplex s(a);
        const EmptinessCertificate c = is_empty(s, kDefaultOrderCap, OraclePath::general);
        t.expect(c.empty == oracle::bbox_empty(a), tag + ": emptiness differs from box scan");
        t.expect(is_hollow(s) == oracle::bbox_hollow(a), tag + ": hollowness differs from box scan");
        if (!c.empty)
            t.expect(c.witness && witness_ok(s, *c.witness), tag + ": bad witness");
        t.expect(c.group_order == abs(oracle::leibniz_det(a)), tag + ": group order");
        if (auto f = detect_p_power_form(a)) {
            const EmptinessCertificate fast = is_empty(LatticeSimplex(*f));
            t.expect(fast.empty == c.empty, tag + ": kernel differs from coset walk");
        }
        ++t.checked;
    }
    return t;
}

Tally fast_vs_general(std::uint64_t seed, std::size_t random_forms, std::uint64_t cap) {
    Tally t;
    auto compare = [&](const PPowerForm& f, const std::string& tag, bool expect_empty) {
        const LatticeSimplex s(f);
        const EmptinessCertificate fast = is_empty(s, cap, OraclePath::automatic);
        const EmptinessCertificate slow = is_empty(s, cap, OraclePath::general);
        t.expect(fast.empty == slow.empty, tag + ": kernel and coset walk disagree");
        t.expect(fast.cosets_checked <= slow.cosets_checked || !slow.empty,
                 tag + ": coset counts");
        if (!fast.empty)
            t.expect(fast.witness && witness_ok(s, *fast.witness), tag + ": kernel witness");
        if (!slow.empty)
            t.expect(slow.witness && witness_ok(s, *slow.witness), tag + ": coset witness");
        if (expect_empty)
            t.expect(fast.empty, tag + ": construction not empty");
        if (fast.empty)
            check_necessary(t, f, tag);
        ++t.checked;
    };

    for (std::int64_t p : {2, 3, 5, 7})
        for (std::size_t k = 2; k <= 4; ++k) {
            std::uint64_t pw = 1;
            for (std::size_t ell = 1; ell <= (std::size_t{1} << k) - k - 1; ++ell) {
                pw *= static_cast<std::uint64_t>(p);
                if (pw > cap)
                    break;
                compare(binary_construction(p, k, ell),
                        "binary p=" + std::to_string(p) + " k=" + std::to_string(k) +
                            " l=" + std::to_string(ell),
                        true);
            }
        }

    std::mt19937_64 rng(seed);
    const std::int64_t primes[] = {2, 3, 5};
    for (std::size_t n = 0; n < random_forms; ++n) {
        const std::int64_t p = primes[rng() % 3];
        const std::size_t k = 1 + rng() % 4;
        const std::size_t r = 1 + rng() % (p == 5 ? 3 : 5);
        const IntMatrix b = oracle::random_matrix(rng, k, r, 0, static_cast<int>(p - 1));
        compare(PPowerForm(p, b), "random p=" + std::to_string(p) + " B=" + show(b), false);
    }
    compare(delta8_form(), "delta8", true);
    compare(delta9_form(), "delta9", true);
    return t;
}

Tally equivalence_moves(std::uint64_t seed, std::size_t count) {
    Tally t;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 5);
    IntMatrix previous;
    for (std::size_t n = 0; n < count; ++n) {
        const std::size_t d = dim(rng);
        const IntMatrix a = small_simplex(rng, d, 60);
        const LatticeSimplex s(a);

        // W P (re-rooted, vertex-permuted A)
        std::vector<std::size_t> order(d);
        std::iota(order.begin(), order.end(), 0);
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<std::size_t> coords(d);
        std::iota(coords.begin(), coords.end(), 0);
        std::shuffle(coords.begin(), coords.end(), rng);
        const std::size_t root = rng() % (d + 1);
        const IntMatrix moved = oracle::random_unimodular(rng, d) *
                                oracle::permutation_matrix(coords) * reroot(a, root, order);
        const LatticeSimplex s2(moved);
        const std::string tag = "A=" + show(a) + " moved=" + show(moved);

        t.expect(quotient_group(s) == quotient_group(s2), tag + ": divisors changed");
        t.expect(is_empty(s).empty == is_empty(s2).empty, tag + ": emptiness changed");
        t.expect(is_hollow(s) == is_hollow(s2), tag + ": hollowness changed");
        const CanonicalForm c1 = canonical_form(s), c2 = canonical_form(s2);
        t.expect(c1 == c2, tag + ": canonical form changed");
        t.expect(are_equivalent(s, s2), tag + ": are_equivalent rejects a move");
        if (d <= 3)
            t.expect(c1.matrix == oracle::brute_canonical(a), tag + ": canonical differs from brute force");
        if (previous.rows() == d) {
            const LatticeSimplex other(previous);
            t.expect(are_equivalent(s, other) == (canonical_form(other) == c1),
                     tag + ": are_equivalent and canonical_form disagree");
        }
        previous = a;
        ++t.checked;
    }
    return t;
}

Tally facet_and_intermediate(std::uint64_t seed, std::size_t count) {
    Tally t;
    std::mt19937_64 rng(seed);

    std::vector<PPowerForm> forms{delta8_form(), delta9_form(), binary_construction(2, 3, 4),
                                  binary_construction(3, 3, 4)};
    // random empty forms by rejection
    const std::int64_t primes[] = {2, 3, 5};
    for (std::size_t tries = 0; forms.size() < 4 + count && tries < 200 * count; ++tries) {
        const std::int64_t p = primes[rng() % 3];
        const std::size_t k = 2 + rng() % 3;
        const std::size_t r = 1 + rng() % 3;
        PPowerForm f(p, oracle::random_matrix(rng, k, r, 0, static_cast<int>(p - 1)));
        if (is_empty(LatticeSimplex(f)).empty)
            forms.push_back(std::move(f));
    }
    for (const PPowerForm& f : forms) {
        const std::string tag = "p=" + std::to_string(f.p()) + " B=" + show(f.B());
        for (std::size_t j = f.k() + 1; j <= f.dim(); ++j) {
            const LatticeSimplex facet = facet_simplex(f, j);
            const QuotientGroup g = quotient_group(facet);
            bool elementary = g.cyclicity_rank() == f.r() - 1;
            for (const auto& m : g.nontrivial_divisors)
                elementary = elementary && m == f.p();
            t.expect(elementary, tag + ": facet " + std::to_string(j) + " quotient");
            t.expect(is_empty(facet, kDefaultOrderCap, OraclePath::general).empty,
                     tag + ": facet " + std::to_string(j) + " not empty");
        }
        ++t.checked;
    }

    // reduce_to_p_power on empty simplices with a nontrivial quotient
    std::size_t reduced = 0;
    std::uniform_int_distribution<std::size_t> dim(2, 4);
    for (std::size_t tries = 0; reduced < count && tries < 400 * count; ++tries) {
        const IntMatrix a = small_simplex(rng, dim(rng), 60);
        const LatticeSimplex s(a);
        const QuotientGroup g = quotient_group(s);
        if (g.cyclicity_rank() == 0 || !is_empty(s).empty)
            continue;
        const Integer& mr = g.nontrivial_divisors.front();
        for (std::int64_t p = 2; p <= mr; ++p) {
            if (!is_prime(p) || !mpz_divisible_p(mr.get_mpz_t(), Integer(p).get_mpz_t()))
                continue;
            const std::string tag = "A=" + show(a) + " p=" + std::to_string(p);
            const LatticeSimplex s2 = reduce_to_p_power(s, p);
            const QuotientGroup g2 = quotient_group(s2);
            bool elementary = g2.cyclicity_rank() == g.cyclicity_rank();
            for (const auto& m : g2.nontrivial_divisors)
                elementary = elementary && m == p;
            t.expect(elementary, tag + ": reduced quotient is not (Z_p)^r");
            t.expect(is_empty(s2).empty, tag + ": reduced simplex not empty");
            // rows of A lie in the row lattice of A'
            const IntMatrix at2 = s2.vertex_matrix().transpose();
            for (std::size_t i = 0; i < a.rows(); ++i)
                t.expect(solve_exact(at2, a.row(i)).denominator() == 1,
                         tag + ": row lattice not contained");
        }
        ++reduced;
        ++t.checked;
    }
    t.expect(reduced == count, "not enough empty simplices with nontrivial quotient sampled");
    return t;
}

Tally white_family() {
    Tally t;
    for (std::int64_t q = 2; q <= 12; ++q)
        for (std::int64_t p = 1; p < q; ++p) {
            if (std::gcd(p, q) != 1)
                continue;
            const LatticeSimplex s = white(p, q);
            const std::string tag = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
            t.expect(is_empty(s).empty, tag + ": not empty");
            t.expect(oracle::bbox_empty(s.vertex_matrix()), tag + ": box scan finds a point");
            const QuotientGroup g = quotient_group(s);
            t.expect(g.cyclicity_rank() == 1 && g.order == q, tag + ": quotient not cyclic of order q");
            ++t.checked;
        }
    return t;
}

} // namespace props
