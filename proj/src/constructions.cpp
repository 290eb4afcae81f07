#include "cyclerank/constructions.hpp"

#include "cyclerank/errors.hpp"

#include <bit>
#include <numeric>

namespace cyclerank {

namespace {

void expect_params(const std::string& kind, const std::vector<std::int64_t>& params,
                   std::size_t lo, std::size_t hi) {
    if (params.size() < lo || params.size() > hi)
        throw InvalidParams("construct " + kind + ": expected " + std::to_string(lo) +
                            (hi != lo ? ".." + std::to_string(hi) : "") + " parameters, got " +
                            std::to_string(params.size()));
}

Integer big(std::int64_t v) { return Integer(std::to_string(v)); }

} // namespace

LatticeSimplex white(std::int64_t p, std::int64_t q) {
    if (p < 1 || q <= p)
        throw InvalidParams("white simplex needs 1 <= p < q");
    if (std::gcd(p, q) != 1)
        throw InvalidParams("white simplex needs gcd(p, q) = 1");
    IntMatrix a = IntMatrix::identity(3);
    a(2, 2) = big(q);
    a(0, 2) = 1;
    a(1, 2) = big(p);
    return LatticeSimplex(std::move(a));
}

LatticeSimplex reeve(std::int64_t p) {
    if (p < 1)
        throw InvalidParams("reeve simplex needs p >= 1");
    if (is_prime(p))
        return LatticeSimplex(PPowerForm(p, IntMatrix{{1}, {1}}));
    return LatticeSimplex(IntMatrix{{1, 0, 1}, {0, 1, 1}, {0, 0, p}});
}

LatticeSimplex dilate(std::int64_t c, std::size_t d) {
    if (c < 1 || d < 1)
        throw InvalidParams("dilate needs c >= 1 and d >= 1");
    IntMatrix a = IntMatrix::identity(d) * big(c);
    if (is_prime(c))
        return LatticeSimplex(PPowerForm(c, 0, d, IntMatrix(0, d)));
    return LatticeSimplex(std::move(a));
}

PPowerForm delta8_form() {
    return PPowerForm(3, IntMatrix{{1, 0, 1, 1, 2}, {0, 1, 1, 2, 1}, {1, 1, 2, 2, 2}});
}

PPowerForm delta9_form() {
    return PPowerForm(3, IntMatrix{{0, 0, 0, 0, 0},
                                   {1, 0, 1, 1, 2},
                                   {0, 1, 1, 2, 1},
                                   {1, 1, 2, 2, 2}});
}

PPowerForm binary_construction(std::int64_t p, std::size_t k, std::size_t ell) {
    if (k < 2 || k > 30)
        throw InvalidParams("binary construction needs 2 <= k <= 30");
    const std::size_t limit = (std::size_t{1} << k) - k - 1;
    if (ell < 1 || ell > limit)
        throw InvalidParams("binary construction needs 1 <= ell <= " + std::to_string(limit));
    IntMatrix b(k, ell);
    std::size_t col = 0;
    for (std::uint64_t bits = 0; col < ell; ++bits) {
        if (std::popcount(bits) < 2)
            continue;
        // first row is the most significant bit
        for (std::size_t i = 0; i < k; ++i)
            b(i, col) = (bits >> (k - 1 - i)) & 1;
        ++col;
    }
    return PPowerForm(p, std::move(b));
}

PPowerForm lift3(const PPowerForm& form) {
    if (form.p() != 3)
        throw InvalidParams("lift3 needs a 3-power form");
    const std::size_t k = form.k(), ell = form.r();
    const std::size_t m = 2 * ell + k;
    IntMatrix b(k + 1, m);
    for (std::size_t i = 0; i < k; ++i) {
        b(i, i) = 1;
        for (std::size_t j = 0; j < ell; ++j) {
            b(i, k + j) = form.B()(i, j);
            b(i, k + ell + j) = form.B()(i, j);
        }
    }
    for (std::size_t j = 0; j < m; ++j)
        b(k, j) = j < k + ell ? 1 : 2;
    return PPowerForm(3, std::move(b));
}

LatticeSimplex construct_named(const std::string& kind, const std::vector<std::int64_t>& params) {
    auto nonneg = [&](std::size_t i) {
        if (params[i] < 0)
            throw InvalidParams("construct " + kind + ": parameters must be non-negative");
        return static_cast<std::size_t>(params[i]);
    };
    if (kind == "white") {
        expect_params(kind, params, 2, 2);
        return white(params[0], params[1]);
    }
    if (kind == "reeve") {
        expect_params(kind, params, 1, 1);
        return reeve(params[0]);
    }
    if (kind == "dilate") {
        expect_params(kind, params, 2, 2);
        return dilate(params[0], nonneg(1));
    }
    if (kind == "delta8") {
        expect_params(kind, params, 0, 0);
        return LatticeSimplex(delta8_form());
    }
    if (kind == "delta9") {
        expect_params(kind, params, 0, 0);
        return LatticeSimplex(delta9_form());
    }
    if (kind == "binary") {
        expect_params(kind, params, 3, 3);
        return LatticeSimplex(binary_construction(params[0], nonneg(1), nonneg(2)));
    }
    if (kind == "lift") {
        expect_params(kind, params, 0, 1);
        const std::size_t times = params.empty() ? 1 : nonneg(0);
        if (times > 4)
            throw InvalidParams("construct lift: at most 4 iterations");
        PPowerForm f = delta8_form();
        for (std::size_t t = 0; t < times; ++t)
            f = lift3(f);
        return LatticeSimplex(std::move(f));
    }
    throw InvalidParams("unknown construction '" + kind + "'");
}

} // namespace cyclerank
