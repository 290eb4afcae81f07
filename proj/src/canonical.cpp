#include "cyclerank/canonical.hpp"

#include "cyclerank/errors.hpp"
#include "cyclerank/exact_linalg.hpp"

#include <algorithm>
#include <string>

namespace cyclerank {

namespace {

// A partial choice of rows of P U_k A^T. `w` is unimodular with the first
// `depth` rows of M w already in canonical lower-triangular shape and zero
// in columns depth.. of those rows.
struct Node {
    std::size_t root;
    std::uint32_t used;
    IntMatrix w;
};

struct Child {
    std::size_t parent;
    std::size_t vertex;
    IntVector y;
};

class Walker {
public:
    explicit Walker(const LatticeSimplex& s) : d_(s.dim()), verts_(s.dim() + 1) {
        verts_[0] = IntVector(d_);
        for (std::size_t j = 0; j < d_; ++j)
            verts_[j + 1] = s.vertex_matrix().column(j);
        for (std::size_t k = 0; k <= d_; ++k)
            frontier_.push_back({k, std::uint32_t{1} << k, IntMatrix::identity(d_)});
    }

    std::size_t dim() const { return d_; }
    bool exhausted() const { return frontier_.empty(); }

    // Expands every frontier node by every unused vertex. `pick` sees the
    // canonical row of each child and returns the row to keep.
    template <typename Pick>
    IntVector step(std::size_t depth, Pick&& pick) {
        std::vector<Child> children;
        std::vector<IntVector> rows;
        for (std::size_t n = 0; n < frontier_.size(); ++n) {
            const Node& node = frontier_[n];
            for (std::size_t v = 0; v <= d_; ++v) {
                if (node.used & (std::uint32_t{1} << v))
                    continue;
                Child c{n, v, transformed(node, v)};
                rows.push_back(canonical_row(c.y, depth));
                children.push_back(std::move(c));
            }
        }
        const IntVector keep = pick(rows);
        std::vector<Node> next;
        for (std::size_t c = 0; c < children.size(); ++c) {
            if (rows[c] != keep)
                continue;
            const Node& parent = frontier_[children[c].parent];
            Node child{parent.root, parent.used | (std::uint32_t{1} << children[c].vertex),
                       parent.w};
            advance(child.w, children[c].y, depth);
            next.push_back(std::move(child));
        }
        frontier_ = std::move(next);
        return keep;
    }

private:
    IntVector transformed(const Node& node, std::size_t v) const {
        IntVector x(d_);
        for (std::size_t m = 0; m < d_; ++m)
            x[m] = verts_[v][m] - verts_[node.root][m];
        IntVector y(d_);
        for (std::size_t c = 0; c < d_; ++c)
            for (std::size_t m = 0; m < d_; ++m)
                if (x[m] != 0)
                    mpz_addmul(y[c].get_mpz_t(), x[m].get_mpz_t(), node.w(m, c).get_mpz_t());
        return y;
    }

    IntVector canonical_row(const IntVector& y, std::size_t depth) const {
        Integer g = 0;
        for (std::size_t c = depth; c < d_; ++c)
            mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), y[c].get_mpz_t());
        IntVector row(depth + 1);
        for (std::size_t j = 0; j < depth; ++j)
            row[j] = g == 0 ? y[j] : mod_floor(y[j], g);
        row[depth] = g;
        return row;
    }

    // Column operations on w that turn y into its canonical row.
    void advance(IntMatrix& w, IntVector y, std::size_t depth) const {
        const std::size_t i = depth;
        for (std::size_t c = i + 1; c < d_; ++c) {
            if (y[c] == 0)
                continue;
            Integer g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), y[i].get_mpz_t(),
                       y[c].get_mpz_t());
            const Integer a = y[i] / g, b = y[c] / g;
            for (std::size_t r = 0; r < d_; ++r) {
                const Integer wi = w(r, i), wc = w(r, c);
                w(r, i) = s * wi + t * wc;
                w(r, c) = a * wc - b * wi;
            }
            y[i] = g;
            y[c] = 0;
        }
        if (y[i] < 0) {
            w.negate_col(i);
            y[i] = -y[i];
        }
        for (std::size_t j = 0; j < i; ++j) {
            const Integer q = floor_div(y[j], y[i]);
            if (q != 0)
                w.add_col_multiple(j, i, Integer(-q));
        }
    }

    std::size_t d_;
    std::vector<IntVector> verts_;
    std::vector<Node> frontier_;
};

void check_cap(std::size_t d, std::uint64_t perm_cap) {
    if (d > 30)
        throw PermCapExceeded("dimension " + std::to_string(d));
    std::uint64_t moves = d + 1;
    for (std::uint64_t i = 2; i <= d; ++i) {
        if (moves > perm_cap)
            break;
        moves *= i;
    }
    if (moves > perm_cap)
        throw PermCapExceeded("d! (d+1) > " + std::to_string(perm_cap) + " for d = " +
                              std::to_string(d));
}

} // namespace

IntMatrix reroot_matrix(std::size_t d, std::size_t k) {
    IntMatrix u = IntMatrix::identity(d);
    if (k > d)
        throw IndexOutOfRange("re-rooting index " + std::to_string(k));
    if (k > 0)
        for (std::size_t i = 0; i < d; ++i)
            u(i, k - 1) = -1;
    return u;
}

CanonicalForm canonical_form(const LatticeSimplex& s, std::uint64_t perm_cap) {
    check_cap(s.dim(), perm_cap);
    Walker walk(s);
    const std::size_t d = walk.dim();
    IntMatrix out(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        const IntVector row = walk.step(i, [](const std::vector<IntVector>& rows) {
            return *std::min_element(rows.begin(), rows.end());
        });
        for (std::size_t j = 0; j <= i; ++j)
            out(i, j) = row[j];
    }
    return {std::move(out)};
}

bool are_equivalent(const LatticeSimplex& a, const LatticeSimplex& b, std::uint64_t perm_cap) {
    if (a.dim() != b.dim())
        throw DimensionMismatch("simplices of dimension " + std::to_string(a.dim()) + " and " +
                                std::to_string(b.dim()));
    if (a.volume() != b.volume())
        return false;
    check_cap(b.dim(), perm_cap);
    const IntMatrix target = a.row_lattice();
    Walker walk(b);
    for (std::size_t i = 0; i < b.dim(); ++i) {
        IntVector want = target.row(i);
        want.resize(i + 1);
        walk.step(i, [&](const std::vector<IntVector>&) { return want; });
        if (walk.exhausted())
            return false;
    }
    return true;
}

} // namespace cyclerank
