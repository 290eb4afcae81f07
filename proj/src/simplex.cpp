#include "cyclerank/simplex.hpp"

#include "cyclerank/errors.hpp"
#include "cyclerank/exact_linalg.hpp"
#include "cyclerank/matrix_io.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cyclerank {

namespace {

std::int64_t mulmod(std::int64_t a, std::int64_t b, std::int64_t m) {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % m);
}

std::int64_t invmod(std::int64_t a, std::int64_t p) {
    std::int64_t g = p, x = 0, x1 = 1, a1 = a;
    while (a1) {
        const std::int64_t q = g / a1;
        std::tie(g, a1) = std::make_tuple(a1, g - q * a1);
        std::tie(x, x1) = std::make_tuple(x1, x - q * x1);
    }
    return ((x % p) + p) % p;
}

std::int64_t residue(const Integer& v, std::int64_t p) {
    return static_cast<std::int64_t>(mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)));
}

// Odometer over the nonzero cosets of A^{-1} Z^d / Z^d. Each coset is
// represented by its numerator vector over the group exponent D, with every
// coordinate in [0, D). `visit` returns true to stop early.
template <typename Visit>
std::uint64_t walk_cosets(const LatticeSimplex& s, std::uint64_t order_cap,
                          std::int64_t& denominator, Visit&& visit) {
    if (s.volume() > Integer(std::to_string(order_cap)))
        throw OrderCapExceeded("group order " + s.volume().get_str() + " > " +
                               std::to_string(order_cap));
    const std::size_t d = s.dim();
    denominator = 1;
    if (s.volume() == 1)
        return 0;
    const SmithDecomposition sd = snf(s.vertex_matrix());
    std::size_t r = 0;
    while (r < d && sd.divisors[r] > 1)
        ++r;
    const std::int64_t D = to_int64(sd.divisors[0]);
    denominator = D;

    std::vector<std::int64_t> radix(r);
    std::vector<std::vector<std::int64_t>> gen(r, std::vector<std::int64_t>(d));
    for (std::size_t i = 0; i < r; ++i) {
        radix[i] = to_int64(sd.divisors[i]);
        const Integer scale = sd.divisors[0] / sd.divisors[i];
        for (std::size_t j = 0; j < d; ++j)
            gen[i][j] = to_int64(mod_floor(scale * sd.V_inverse(j, i), sd.divisors[0]));
    }

    std::vector<std::int64_t> digit(r, 0);
    std::vector<std::int64_t> num(d, 0);
    std::uint64_t checked = 0;
    for (;;) {
        std::size_t i = 0;
        for (; i < r; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                num[j] += gen[i][j];
                if (num[j] >= D)
                    num[j] -= D;
            }
            if (++digit[i] < radix[i])
                break;
            digit[i] = 0;
        }
        if (i == r)
            break;
        ++checked;
        if (visit(static_cast<const std::vector<std::int64_t>&>(num)))
            break;
    }
    return checked;
}

IntVector lattice_point(const IntMatrix& a, const std::vector<std::int64_t>& num,
                        std::int64_t den) {
    IntVector lam(num.size());
    for (std::size_t i = 0; i < num.size(); ++i)
        lam[i] = Integer(std::to_string(num[i]));
    IntVector z = a * lam;
    const Integer dd(std::to_string(den));
    for (auto& x : z)
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), dd.get_mpz_t());
    return z;
}

bool block_shaped(const IntMatrix& h, std::size_t k, std::int64_t p) {
    const std::size_t d = h.rows();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
            const Integer& v = h(i, j);
            if (i < k && j < k) {
                if (v != (i == j ? 1 : 0))
                    return false;
            } else if (i >= k && j < k) {
                if (v != 0)
                    return false;
            } else if (i >= k && j >= k) {
                if (v != (i == j ? p : 0))
                    return false;
            } else if (v < 0 || v >= p) {
                return false;
            }
        }
    return true;
}

PPowerForm form_from_block(const IntMatrix& h, std::size_t k, std::int64_t p) {
    const std::size_t d = h.rows();
    IntMatrix b(k, d - k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = k; j < d; ++j)
            b(i, j - k) = h(i, j);
    return PPowerForm(p, k, d - k, std::move(b));
}

// Columns of `a` that are linearly independent modulo p, chosen greedily in
// index order.
std::vector<std::size_t> independent_columns_mod_p(const IntMatrix& a, std::int64_t p) {
    const std::size_t d = a.rows();
    std::vector<std::vector<std::int64_t>> basis;
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> chosen;
    for (std::size_t c = 0; c < a.cols(); ++c) {
        std::vector<std::int64_t> v(d);
        for (std::size_t i = 0; i < d; ++i)
            v[i] = residue(a(i, c), p);
        for (std::size_t b = 0; b < basis.size(); ++b) {
            const std::int64_t f = v[pivots[b]];
            if (f == 0)
                continue;
            for (std::size_t i = 0; i < d; ++i)
                v[i] = ((v[i] - mulmod(f, basis[b][i], p)) % p + p) % p;
        }
        const auto nz = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
        if (nz == v.end())
            continue;
        const std::size_t pv = static_cast<std::size_t>(nz - v.begin());
        const std::int64_t inv = invmod(v[pv], p);
        for (auto& x : v)
            x = mulmod(x, inv, p);
        basis.push_back(std::move(v));
        pivots.push_back(pv);
        chosen.push_back(c);
    }
    return chosen;
}

IntMatrix permute_columns(const IntMatrix& a, const std::vector<std::size_t>& order) {
    IntMatrix out(a.rows(), a.cols());
    for (std::size_t j = 0; j < order.size(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i)
            out(i, j) = a(i, order[j]);
    return out;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2)
        return false;
    for (std::int64_t q = 2; q <= n / q; ++q)
        if (n % q == 0)
            return false;
    return true;
}

PPowerForm::PPowerForm(std::int64_t p, IntMatrix b)
    : PPowerForm(p, b.rows(), b.cols(), b) {}

PPowerForm::PPowerForm(std::int64_t p, std::size_t k, std::size_t r, IntMatrix b)
    : p_(p), k_(k), r_(r), b_(std::move(b)) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    if (k_ == 0 || r_ == 0)
        b_ = IntMatrix(k_, r_);
    if (b_.rows() != k_ || b_.cols() != r_)
        throw DimensionMismatch("B block must be " + std::to_string(k_) + " x " +
                                std::to_string(r_));
    for (const auto& v : b_.data())
        if (v < 0 || v >= p)
            throw InvalidParams("B entries must lie in [0, p)");
}

std::vector<std::int64_t> PPowerForm::b_column_major() const {
    std::vector<std::int64_t> out(k_ * r_);
    for (std::size_t j = 0; j < r_; ++j)
        for (std::size_t i = 0; i < k_; ++i)
            out[j * k_ + i] = b_(i, j).get_si();
    return out;
}

IntMatrix PPowerForm::assemble() const {
    const std::size_t d = dim();
    IntMatrix h(d, d);
    for (std::size_t i = 0; i < k_; ++i)
        h(i, i) = 1;
    for (std::size_t i = k_; i < d; ++i)
        h(i, i) = Integer(std::to_string(p_));
    for (std::size_t i = 0; i < k_; ++i)
        for (std::size_t j = 0; j < r_; ++j)
            h(i, k_ + j) = b_(i, j);
    return h;
}

LatticeSimplex::LatticeSimplex(IntMatrix vertex_matrix) : a_(std::move(vertex_matrix)) {
    if (!a_.is_square() || a_.empty())
        throw DimensionMismatch("vertex matrix must be non-empty and square");
    volume_ = abs(determinant(a_));
    if (volume_ == 0)
        throw DegenerateSimplex();
}

LatticeSimplex::LatticeSimplex(PPowerForm form)
    : LatticeSimplex(form.assemble()) {
    form_ = std::move(form);
}

LatticeSimplex LatticeSimplex::from_vertices(const std::vector<IntVector>& points) {
    if (points.size() < 2)
        throw DegenerateSimplex();
    const std::size_t d = points.size() - 1;
    IntMatrix a(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        if (points[j + 1].size() != d || points[0].size() != d)
            throw DimensionMismatch("a d-simplex needs d+1 points in Z^d");
        for (std::size_t i = 0; i < d; ++i)
            a(i, j) = points[j + 1][i] - points[0][i];
    }
    return LatticeSimplex(std::move(a));
}

std::vector<IntVector> LatticeSimplex::vertices() const {
    std::vector<IntVector> out;
    out.emplace_back(dim());
    for (std::size_t j = 0; j < dim(); ++j)
        out.push_back(a_.column(j));
    return out;
}

IntMatrix LatticeSimplex::edge_lattice() const { return lattice_basis(a_); }

IntMatrix LatticeSimplex::row_lattice() const { return lattice_basis(a_.transpose()); }

QuotientGroup quotient_group(const LatticeSimplex& s) {
    const SmithDecomposition sd = snf(s.vertex_matrix());
    QuotientGroup g;
    g.order = s.volume();
    for (auto it = sd.divisors.rbegin(); it != sd.divisors.rend(); ++it)
        if (*it > 1)
            g.nontrivial_divisors.push_back(*it);
    return g;
}

PPowerScan scan_p_power(std::int64_t p, std::size_t k, std::size_t r,
                        std::span<const std::int64_t> b) {
    PPowerScan out;
    std::vector<std::int64_t> digit(r, 0);
    std::vector<std::int64_t> bn(k, 0); // (B n)_i mod p
    std::int64_t digit_sum = 0;
    for (;;) {
        std::size_t j = 0;
        for (; j < r; ++j) {
            const std::int64_t* col = b.data() + j * k;
            for (std::size_t i = 0; i < k; ++i) {
                bn[i] += col[i];
                if (bn[i] >= p)
                    bn[i] -= p;
            }
            ++digit_sum;
            if (++digit[j] < p)
                break;
            digit[j] = 0;
            digit_sum -= p;
        }
        if (j == r)
            break;
        ++out.checked;
        std::int64_t total = digit_sum;
        for (std::size_t i = 0; i < k && total <= p; ++i)
            total += bn[i] ? p - bn[i] : 0;
        if (total <= p) {
            out.empty = false;
            out.violating_digits = digit;
            break;
        }
    }
    return out;
}

EmptinessCertificate is_empty(const LatticeSimplex& s, std::uint64_t order_cap,
                              OraclePath path) {
    EmptinessCertificate cert;
    cert.group_order = s.volume();

    if (path == OraclePath::automatic && s.p_power()) {
        if (s.volume() > Integer(std::to_string(order_cap)))
            throw OrderCapExceeded("group order " + s.volume().get_str() + " > " +
                                   std::to_string(order_cap));
        const PPowerForm& f = *s.p_power();
        const auto b = f.b_column_major();
        const PPowerScan scan = scan_p_power(f.p(), f.k(), f.r(), b);
        cert.cosets_checked = scan.checked;
        cert.empty = scan.empty;
        if (!scan.empty) {
            // lambda = (((-(B n)_i) mod p)_i, n) / p
            std::vector<std::int64_t> num(f.dim(), 0);
            for (std::size_t i = 0; i < f.k(); ++i) {
                std::int64_t acc = 0;
                for (std::size_t j = 0; j < f.r(); ++j)
                    acc = (acc + b[j * f.k() + i] * scan.violating_digits[j]) % f.p();
                num[i] = (f.p() - acc) % f.p();
            }
            for (std::size_t j = 0; j < f.r(); ++j)
                num[f.k() + j] = scan.violating_digits[j];
            cert.witness = lattice_point(s.vertex_matrix(), num, f.p());
        }
        return cert;
    }

    std::int64_t den = 1;
    std::vector<std::int64_t> hit;
    cert.cosets_checked = walk_cosets(s, order_cap, den, [&](const auto& num) {
        std::int64_t total = 0;
        for (std::int64_t x : num)
            total += x;
        if (total <= den) {
            hit = num;
            return true;
        }
        return false;
    });
    if (!hit.empty()) {
        cert.empty = false;
        cert.witness = lattice_point(s.vertex_matrix(), hit, den);
    }
    return cert;
}

bool is_hollow(const LatticeSimplex& s, std::uint64_t order_cap) {
    bool hollow = true;
    std::int64_t den = 1;
    walk_cosets(s, order_cap, den, [&](const auto& num) {
        std::int64_t total = 0;
        for (std::int64_t x : num) {
            if (x == 0)
                return false;
            total += x;
        }
        if (total < den) {
            hollow = false;
            return true;
        }
        return false;
    });
    return hollow;
}

std::optional<PPowerForm> detect_p_power_form(const IntMatrix& h) {
    if (!h.is_square() || h.empty())
        return std::nullopt;
    const std::size_t d = h.rows();
    std::size_t k = 0;
    while (k < d && h(k, k) == 1)
        ++k;
    if (k == d)
        return std::nullopt;
    const Integer& pz = h(d - 1, d - 1);
    if (!fits_int64(pz) || !is_prime(to_int64(pz)))
        return std::nullopt;
    const std::int64_t p = to_int64(pz);
    if (!block_shaped(h, k, p))
        return std::nullopt;
    return form_from_block(h, k, p);
}

PPowerForm to_p_power_form(const LatticeSimplex& s, std::optional<std::int64_t> prime) {
    const QuotientGroup g = quotient_group(s);
    const std::size_t d = s.dim();
    const std::size_t r = g.cyclicity_rank();
    std::int64_t p = 0;
    if (r == 0) {
        if (!prime)
            throw NotPPower("trivial quotient group: a prime must be supplied");
        p = *prime;
    } else {
        const Integer& m = g.nontrivial_divisors.front();
        if (g.nontrivial_divisors.back() != m || !fits_int64(m) || !is_prime(to_int64(m)))
            throw NotPPower("quotient group is not elementary abelian");
        p = to_int64(m);
        if (prime && *prime != p)
            throw NotPPower("quotient group is a power of " + std::to_string(p));
    }
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    const std::size_t k = d - r;

    // k columns independent mod p span a saturated sublattice (A is invertible
    // modulo every other prime), so putting them first yields the ones on the
    // diagonal of the Hermite form and forces C = p E_r after them.
    std::vector<std::size_t> order = independent_columns_mod_p(s.vertex_matrix(), p);
    if (order.size() == k) {
        for (std::size_t j = 0; j < d; ++j)
            if (std::find(order.begin(), order.end(), j) == order.end())
                order.push_back(j);
        const IntMatrix h = hermite_form(permute_columns(s.vertex_matrix(), order));
        if (block_shaped(h, k, p))
            return form_from_block(h, k, p);
    }

    std::vector<std::size_t> perm(d);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const IntMatrix h = hermite_form(permute_columns(s.vertex_matrix(), perm));
        if (block_shaped(h, k, p))
            return form_from_block(h, k, p);
    } while (std::next_permutation(perm.begin(), perm.end()));
    throw Error("internal error: no column order gives p-power block shape");
}

LatticeSimplex reduce_to_p_power(const LatticeSimplex& s, std::int64_t p) {
    if (!is_prime(p))
        throw InvalidPrime(std::to_string(p) + " is not prime");
    const std::size_t d = s.dim();
    const SmithDecomposition sd = snf(s.vertex_matrix().transpose());
    std::size_t r = 0;
    while (r < d && sd.divisors[r] > 1)
        ++r;
    const Integer pz(std::to_string(p));
    if (r == 0 || !mpz_divisible_p(sd.divisors[r - 1].get_mpz_t(), pz.get_mpz_t()))
        throw InvalidPrime(std::to_string(p) + " does not divide the smallest nontrivial "
                                               "elementary divisor");
    // A'^T = U diag(p,...,p,1,...,1)
    IntMatrix at = sd.U;
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t row = 0; row < d; ++row)
            at(row, i) *= pz;
    return LatticeSimplex(at.transpose());
}

LatticeSimplex facet_simplex(const PPowerForm& form, std::size_t j) {
    if (j <= form.k() || j > form.dim())
        throw IndexOutOfRange("facet index " + std::to_string(j) + " outside (" +
                              std::to_string(form.k()) + ", " + std::to_string(form.dim()) +
                              "]");
    const std::size_t col = j - 1 - form.k();
    std::vector<std::size_t> rows(form.k()), cols;
    std::iota(rows.begin(), rows.end(), 0);
    for (std::size_t c = 0; c < form.r(); ++c)
        if (c != col)
            cols.push_back(c);
    return LatticeSimplex(PPowerForm(form.p(), form.k(), form.r() - 1,
                                     form.B().submatrix(rows, cols)));
}

bool has_zero_sum_subcollection(std::int64_t p, std::size_t k, std::size_t r,
                                std::span<const std::int64_t> b, std::size_t max_t) {
    max_t = std::min(max_t, r);
    std::vector<std::size_t> idx;
    std::vector<std::int64_t> sums(k, 0);
    // Depth-first over increasing index sets; sums tracks the chosen columns.
    auto rec = [&](auto&& self, std::size_t start) -> bool {
        for (std::size_t c = start; c < r; ++c) {
            const std::int64_t* col = b.data() + c * k;
            bool zero = true;
            for (std::size_t i = 0; i < k; ++i) {
                sums[i] = (sums[i] + col[i]) % p;
                zero = zero && sums[i] == 0;
            }
            idx.push_back(c);
            const bool found = zero || (idx.size() < max_t && self(self, c + 1));
            idx.pop_back();
            for (std::size_t i = 0; i < k; ++i)
                sums[i] = (sums[i] - col[i] % p + p) % p;
            if (found)
                return true;
        }
        return false;
    };
    return max_t > 0 && rec(rec, 0);
}

NecessaryConditions check_necessary_conditions(const PPowerForm& form) {
    NecessaryConditions nc;
    const IntMatrix& b = form.B();
    const std::size_t k = form.k(), r = form.r();
    for (std::size_t j = 0; j < r; ++j) {
        std::size_t nonzero = 0;
        Integer g = 0;
        for (std::size_t i = 0; i < k; ++i)
            if (b(i, j) != 0) {
                ++nonzero;
                g = gcd(g, b(i, j));
            }
        if (nonzero < 2)
            nc.every_column_two_nonzero = false;
        if (nonzero == 2 && g != 1)
            nc.two_support_columns_primitive = false;
    }
    for (std::size_t a = 0; a < r; ++a)
        for (std::size_t c = 0; c < r; ++c) {
            if (a == c)
                continue;
            // is column a an integer multiple mu * column c?
            std::optional<Integer> mu;
            bool multiple = true;
            for (std::size_t i = 0; i < k && multiple; ++i) {
                if (b(i, c) == 0) {
                    multiple = b(i, a) == 0;
                } else if (!mpz_divisible_p(b(i, a).get_mpz_t(), b(i, c).get_mpz_t())) {
                    multiple = false;
                } else {
                    const Integer q = b(i, a) / b(i, c);
                    if (mu && *mu != q)
                        multiple = false;
                    mu = q;
                }
            }
            if (multiple && mu && *mu != 0)
                nc.no_integral_multiples = false;
        }
    const auto bc = form.b_column_major();
    nc.no_zero_sum_subcollection = !has_zero_sum_subcollection(
        form.p(), k, r, bc, static_cast<std::size_t>(std::min<std::int64_t>(form.p(), r)));
    for (std::size_t i = 0; i < k; ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < r; ++j)
            zero = zero && b(i, j) == 0;
        if (zero && r > 0)
            nc.zero_rows.push_back(i);
    }
    return nc;
}

nlohmann::json p_power_to_json(const PPowerForm& f) {
    return {{"p", f.p()}, {"r", f.r()}, {"k", f.k()}, {"B", matrix_to_json(f.B())}};
}

PPowerForm p_power_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("p") || !j.contains("r") || !j.contains("B"))
        throw ParseError("p_power object needs p, r and B");
    const std::int64_t p = to_int64(integer_from_json(j.at("p")));
    const auto r = j.at("r").get<std::size_t>();
    IntMatrix b = matrix_from_json(j.at("B"));
    const std::size_t k = j.contains("k") ? j.at("k").get<std::size_t>() : b.rows();
    return PPowerForm(p, k, r, std::move(b));
}

nlohmann::json simplex_to_json(const LatticeSimplex& s) {
    nlohmann::json j;
    j["dim"] = s.dim();
    nlohmann::json cols = nlohmann::json::array();
    for (std::size_t c = 0; c < s.dim(); ++c) {
        nlohmann::json col = nlohmann::json::array();
        for (std::size_t i = 0; i < s.dim(); ++i)
            col.push_back(integer_to_json(s.vertex_matrix()(i, c)));
        cols.push_back(std::move(col));
    }
    j["columns"] = std::move(cols);
    if (s.p_power())
        j["p_power"] = p_power_to_json(*s.p_power());
    return j;
}

LatticeSimplex simplex_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("columns"))
        throw ParseError("simplex object needs columns");
    const IntMatrix a = matrix_from_json(j.at("columns")).transpose();
    if (j.contains("dim") && j.at("dim").get<std::size_t>() != a.rows())
        throw ParseError("dim does not match the number of columns");
    if (j.contains("p_power") && !j.at("p_power").is_null()) {
        PPowerForm f = p_power_from_json(j.at("p_power"));
        if (f.assemble() != a)
            throw ParseError("p_power block does not match the columns");
        return LatticeSimplex(std::move(f));
    }
    return LatticeSimplex(a);
}

} // namespace cyclerank
