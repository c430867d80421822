#include "pnlie/axioms.hpp"

#include <stdexcept>

#include "pnlie/parallel.hpp"

namespace pnlie {

namespace {

struct Failure {
    std::size_t checked = 0;
    std::optional<IndexTuple> witness;
};

// Runs check(i) for i in [0, count) across threads and reports the first
// failure by index, independent of the thread count.
template <class Check>
void run_check(AxiomResult& r, std::size_t count, unsigned threads, Check check) {
    auto parts = run_chunks<Failure>(count, threads, [&](std::size_t begin, std::size_t end, Failure& f) {
        for (std::size_t i = begin; i < end; ++i) {
            ++f.checked;
            if (auto w = check(i)) {
                f.witness = std::move(w);
                return;
            }
        }
    });
    r.checked = 0;
    for (auto& f : parts) {
        r.checked += f.checked;
        if (f.witness) {
            r.holds = false;
            r.witness = std::move(f.witness);
            return;
        }
    }
}

IndexTuple concat(const IndexTuple& a, const IndexTuple& b) {
    IndexTuple out(a);
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

Vector fundamental_identity_defect(const StructAlgebra& p, const std::vector<Vector>& xs, const std::vector<Vector>& ys) {
    const std::size_t n = p.arity();
    if (xs.size() + 1 != n || ys.size() != n) throw std::invalid_argument("fundamental identity needs n-1 and n arguments");
    std::vector<Vector> args(xs);
    args.push_back(p.bracket(ys));
    Vector defect = p.bracket(args);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Vector> inner(xs);
        inner.push_back(ys[i]);
        std::vector<Vector> outer(ys);
        outer[i] = p.bracket(inner);
        Vector term = p.bracket(outer);
        for (std::size_t k = 0; k < defect.size(); ++k) defect[k] -= term[k];
    }
    return defect;
}

Vector fundamental_identity_defect(const StructAlgebra& p, const IndexTuple& xs, const IndexTuple& ys) {
    const std::size_t d = p.dim();
    std::vector<Vector> vx, vy;
    for (auto i : xs) vx.push_back(basis_vector(d, i));
    for (auto i : ys) vy.push_back(basis_vector(d, i));
    return fundamental_identity_defect(p, vx, vy);
}

AxiomReport verify_axioms(const StructAlgebra& p, unsigned threads) {
    AxiomReport rep;
    const std::size_t d = p.dim(), n = p.arity();
    if (d == 0) return rep;

    // The product table is symmetric by construction.
    rep.commutative.checked = 0;

    if (!p.product_is_zero()) {
        auto triples = all_tuples(d, 3);
        run_check(rep.associative, triples.size(), threads, [&](std::size_t i) -> std::optional<IndexTuple> {
            const auto& t = triples[i];
            if (t[0] > t[2]) return std::nullopt;  // symmetric under swapping the outer factors
            Vector left(d), right(d);
            for (const auto& [k, c] : to_sparse(p.product_basis(t[0], t[1]))) p.add_product_basis(k, t[2], c, left);
            for (const auto& [k, c] : to_sparse(p.product_basis(t[1], t[2]))) p.add_product_basis(t[0], k, c, right);
            if (left != right) return t;
            return std::nullopt;
        });
    }

    if (!p.alternating()) {
        auto tuples = all_tuples(d, n);
        run_check(rep.skew, tuples.size(), threads, [&](std::size_t i) -> std::optional<IndexTuple> {
            const auto& t = tuples[i];
            Vector v = p.bracket_basis(t);
            for (std::size_t a = 0; a + 1 < n; ++a) {
                if (t[a] > t[a + 1]) continue;
                IndexTuple s = t;
                std::swap(s[a], s[a + 1]);
                Vector w = p.bracket_basis(s);
                for (std::size_t k = 0; k < d; ++k) w[k] += v[k];
                if (!is_zero_vector(w)) return t;
            }
            return std::nullopt;
        });
    }

    if (!p.bracket_is_zero()) {
        auto xs = p.alternating() ? index_subsets(d, n - 1) : all_tuples(d, n - 1);
        auto ys = p.alternating() ? index_subsets(d, n) : all_tuples(d, n);
        // ad[j] = [x_1..x_{n-1}, e_j], reused for every y.
        run_check(rep.fundamental, xs.size(), threads, [&](std::size_t i) -> std::optional<IndexTuple> {
            const auto& x = xs[i];
            IndexTuple idx(x);
            idx.push_back(0);
            std::vector<SparseVector> ad(d);
            bool zero = true;
            for (std::size_t j = 0; j < d; ++j) {
                idx.back() = j;
                ad[j] = to_sparse(p.bracket_basis(idx));
                zero &= ad[j].empty();
            }
            if (zero) return std::nullopt;
            for (const auto& y : ys) {
                Vector lhs(d);
                for (const auto& [k, c] : to_sparse(p.bracket_basis(y))) {
                    for (const auto& [l, e] : ad[k]) lhs[l] += c * e;
                }
                IndexTuple t(y);
                for (std::size_t s = 0; s < n; ++s) {
                    for (const auto& [k, c] : ad[y[s]]) {
                        t[s] = k;
                        p.add_bracket_basis(t, -c, lhs);
                    }
                    t[s] = y[s];
                }
                if (!is_zero_vector(lhs)) return concat(x, y);
            }
            return std::nullopt;
        });

        auto rest = p.alternating() ? index_subsets(d, n - 1) : all_tuples(d, n - 1);
        auto pairs = index_subsets(d, 2);
        for (std::size_t i = 0; i < d; ++i) pairs.push_back({i, i});
        if (!p.product_is_zero()) {
            run_check(rep.leibniz, pairs.size(), threads, [&](std::size_t i) -> std::optional<IndexTuple> {
                std::size_t y = pairs[i][0], z = pairs[i][1];
                Vector yz = p.product_basis(y, z);
                for (const auto& x : rest) {
                    IndexTuple t;
                    t.push_back(0);
                    t.insert(t.end(), x.begin(), x.end());
                    Vector lhs(d);
                    for (const auto& [k, c] : to_sparse(yz)) {
                        t[0] = k;
                        p.add_bracket_basis(t, c, lhs);
                    }
                    t[0] = z;
                    for (const auto& [k, c] : to_sparse(p.bracket_basis(t))) p.add_product_basis(y, k, -c, lhs);
                    t[0] = y;
                    for (const auto& [k, c] : to_sparse(p.bracket_basis(t))) p.add_product_basis(z, k, -c, lhs);
                    if (!is_zero_vector(lhs)) return concat({y, z}, x);
                }
                return std::nullopt;
            });
        }
    }
    return rep;
}

}  // namespace pnlie
