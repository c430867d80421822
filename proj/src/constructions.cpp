#include "pnlie/constructions.hpp"

#include <random>

#include "pnlie/fixtures.hpp"
#include "pnlie/parallel.hpp"

namespace pnlie {

namespace {

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (is_zero(a[i])) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!is_zero(b[j])) out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

void add_to(Vector& out, const Vector& v) {
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += v[k];
}

void require_verified(const StructAlgebra& p, const char* what) {
    if (!verify_axioms(p).all()) throw std::invalid_argument(std::string(what) + " fails verify_axioms");
}

AxiomReport verified_or_throw(const StructAlgebra& p, unsigned threads, const char* what) {
    AxiomReport r = verify_axioms(p, threads);
    for (const auto* item : r.items()) {
        if (!item->holds) throw ConstructionFailure(std::string(what) + ": " + item->name + " fails on the result");
    }
    return r;
}

StructAlgebra to_alternating_or_throw(const StructAlgebra& p, const char* what) {
    try {
        return p.to_alternating();
    } catch (const std::domain_error&) {
        throw ConstructionFailure(std::string(what) + ": quotient bracket is not antisymmetric");
    }
}

// Tensor power L^{(x)(n-1)} with the Leibniz bracket, optionally with the
// component-wise product. Also returns vec(D_x) for every basis tuple x, where
// D_x = [x_1..x_{n-1}, -].
struct TensorPower {
    StructAlgebra algebra;
    std::vector<SparseVector> phi;
};

TensorPower tensor_power(const StructAlgebra& l, bool with_product, std::size_t budget) {
    const std::size_t d = l.dim(), n = l.arity();
    if (n < 2) throw std::invalid_argument("tensor power needs arity >= 2");
    if (!l.alternating()) throw std::invalid_argument("tensor power needs an alternating bracket");
    const std::size_t k = n - 1;
    std::size_t big = 1;
    for (std::size_t s = 0; s < k; ++s) {
        big *= d;
        if (big > budget) {
            throw BudgetExceeded("tensor power dimension exceeds the budget of " + std::to_string(budget));
        }
    }
    std::vector<IndexTuple> tuples = all_tuples(d, k);
    std::vector<std::size_t> place(k, 1);
    for (std::size_t s = k - 1; s-- > 0;) place[s] = place[s + 1] * d;

    TensorPower out{StructAlgebra(big, 2, BracketSymmetry::General), std::vector<SparseVector>(big)};
    // columns[x][v] = D_x e_v
    std::vector<std::vector<SparseVector>> columns(big);
    for (std::size_t x = 0; x < big; ++x) {
        QMatrix op = adjoint_operator(l, tuples[x]);
        columns[x].resize(d);
        Vector flat(d * d);
        for (std::size_t v = 0; v < d; ++v) {
            columns[x][v] = to_sparse(op.column(v));
            for (const auto& [u, c] : columns[x][v]) flat[u * d + v] = c;
        }
        out.phi[x] = to_sparse(flat);
    }
    for (std::size_t x = 0; x < big; ++x) {
        if (out.phi[x].empty()) continue;
        for (std::size_t y = 0; y < big; ++y) {
            Vector value(big);
            for (std::size_t s = 0; s < k; ++s) {
                std::size_t ys = tuples[y][s];
                for (const auto& [u, c] : columns[x][ys]) value[y + (u - ys) * place[s]] += c;
            }
            if (!is_zero_vector(value)) out.algebra.set_bracket(IndexTuple{x, y}, value);
        }
    }
    if (with_product && !l.product_is_zero()) {
        for (std::size_t x = 0; x < big; ++x) {
            for (std::size_t y = x; y < big; ++y) {
                Vector value{Scalar(1)};
                for (std::size_t s = 0; s < k; ++s) value = kron(value, l.product_basis(tuples[x][s], tuples[y][s]));
                if (!is_zero_vector(value)) out.algebra.set_product(x, y, value);
            }
        }
    }
    return out;
}

// Ker(x -> ad_x). ad_x acts on each tensor slot through D_x, so it is the
// Kronecker sum of n-1 copies of D_x, which vanishes exactly when D_x does.
Subspace ad_kernel(const TensorPower& t, std::size_t d) {
    const std::size_t big = t.algebra.dim();
    QMatrix m(d * d, big);
    for (std::size_t x = 0; x < big; ++x) {
        for (const auto& [r, c] : t.phi[x]) m(r, x) = c;
    }
    return Subspace::span(big, nullspace(m));
}

bool in_ad_kernel(const TensorPower& t, const Vector& w, std::size_t d) {
    Vector image(d * d);
    for (std::size_t x = 0; x < w.size(); ++x) {
        if (is_zero(w[x])) continue;
        for (const auto& [r, c] : t.phi[x]) image[r] += w[x] * c;
    }
    return is_zero_vector(image);
}

bool subspace_in_ad_kernel(const TensorPower& t, const Subspace& s, std::size_t d) {
    for (const auto& v : s.basis()) {
        if (!in_ad_kernel(t, v, d)) return false;
    }
    return true;
}

// The kernel is a two-sided bracket ideal when [e_y, k] and [k, e_y] stay in
// it for every basis e_y and kernel basis vector k. Only basis x with D_x != 0
// have nonzero brackets [e_x, -], so the check runs over those.
bool ad_kernel_is_ideal(const TensorPower& t, const Subspace& kernel, std::size_t d) {
    const StructAlgebra& g = t.algebra;
    const std::size_t big = g.dim();
    std::vector<std::size_t> active;
    for (std::size_t x = 0; x < big; ++x) {
        if (!t.phi[x].empty()) active.push_back(x);
    }
    // phi_of[a][y] = vec(D_w) for w = [e_{active[a]}, e_y].
    std::vector<std::vector<Vector>> phi_of(active.size(), std::vector<Vector>(big));
    for (std::size_t a = 0; a < active.size(); ++a) {
        for (std::size_t y = 0; y < big; ++y) {
            Vector image(d * d);
            for (const auto& [z, c] : to_sparse(g.bracket_basis(IndexTuple{active[a], y}))) {
                for (const auto& [r, e] : t.phi[z]) image[r] += c * e;
            }
            phi_of[a][y] = std::move(image);
        }
    }
    std::vector<std::size_t> slot(big, active.size());
    for (std::size_t a = 0; a < active.size(); ++a) slot[active[a]] = a;
    for (const auto& kv : kernel.basis()) {
        SparseVector k = to_sparse(kv);
        // [e_y, k] for active y.
        for (std::size_t a = 0; a < active.size(); ++a) {
            Vector acc(d * d);
            for (const auto& [x, c] : k) {
                for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += c * phi_of[a][x][r];
            }
            if (!is_zero_vector(acc)) return false;
        }
        // [k, e_y] for every y.
        for (std::size_t y = 0; y < big; ++y) {
            Vector acc(d * d);
            for (const auto& [x, c] : k) {
                if (slot[x] == active.size()) continue;
                for (std::size_t r = 0; r < acc.size(); ++r) acc[r] += c * phi_of[slot[x]][y][r];
            }
            if (!is_zero_vector(acc)) return false;
        }
    }
    return true;
}

StructAlgebra scaled_algebra(const StructAlgebra& p, const Scalar& bracket_scale, const Scalar& product_scale) {
    StructAlgebra out(p.dim(), p.arity(), p.symmetry());
    for (const auto& [key, value] : p.bracket_table()) {
        Vector v = to_dense(value, p.dim());
        for (auto& c : v) c *= bracket_scale;
        out.set_bracket(p.decode_bracket_key(key), v);
    }
    for (const auto& [key, value] : p.product_table()) {
        Vector v = to_dense(value, p.dim());
        for (auto& c : v) c *= product_scale;
        auto [i, j] = p.decode_product_key(key);
        out.set_product(i, j, v);
    }
    return out;
}

}  // namespace

TensorAlgebra tensor_poisson_n(const StructAlgebra& p, const StructAlgebra& b, unsigned threads) {
    if (!b.bracket_is_zero()) throw std::invalid_argument("commutative factor must have a zero bracket");
    AxiomReport rb = verify_axioms(b);
    if (!rb.commutative.holds || !rb.associative.holds) {
        throw std::invalid_argument("commutative factor is not commutative and associative");
    }
    if (!p.alternating()) throw std::invalid_argument("Poisson n-Lie factor needs an alternating bracket");
    require_verified(p, "Poisson n-Lie factor");

    const std::size_t da = p.dim(), db = b.dim(), n = p.arity();
    TensorAlgebra t{StructAlgebra(da * db, n), {da, db}, {}};
    if (da * db == 0) return t;

    // f_{j_1} ... f_{j_n} for every tuple of B indices.
    std::vector<IndexTuple> b_tuples = all_tuples(db, n);
    std::vector<Vector> b_products(b_tuples.size());
    for (std::size_t r = 0; r < b_tuples.size(); ++r) {
        Vector v = basis_vector(db, b_tuples[r][0]);
        for (std::size_t s = 1; s < n; ++s) v = b.product(v, basis_vector(db, b_tuples[r][s]));
        b_products[r] = std::move(v);
    }
    IndexTuple combined(n);
    for (const auto& [key, value] : p.bracket_table()) {
        IndexTuple idx = p.decode_bracket_key(key);
        Vector x = to_dense(value, da);
        for (std::size_t r = 0; r < b_tuples.size(); ++r) {
            if (is_zero_vector(b_products[r])) continue;
            for (std::size_t s = 0; s < n; ++s) combined[s] = idx[s] * db + b_tuples[r][s];
            t.algebra.set_bracket(combined, kron(x, b_products[r]));
        }
    }
    for (std::size_t u = 0; u < da * db; ++u) {
        for (std::size_t v = u; v < da * db; ++v) {
            Vector value = kron(p.product_basis(u / db, v / db), b.product_basis(u % db, v % db));
            if (!is_zero_vector(value)) t.algebra.set_product(u, v, value);
        }
    }
    t.verification = verified_or_throw(t.algebra, threads, "tensor_poisson_n");
    return t;
}

TensorAlgebra xu_tensor(const StructAlgebra& p1, const StructAlgebra& p2, unsigned threads) {
    if (p1.arity() != 2 || p2.arity() != 2) throw std::invalid_argument("xu_tensor needs binary algebras");
    if (!p1.alternating() || !p2.alternating()) throw std::invalid_argument("xu_tensor needs alternating brackets");
    require_verified(p1, "first factor");
    require_verified(p2, "second factor");
    const std::size_t d1 = p1.dim(), d2 = p2.dim(), d = d1 * d2;
    TensorAlgebra t{StructAlgebra(d, 2), {d1, d2}, {}};
    for (std::size_t u = 0; u < d; ++u) {
        const std::size_t x1 = u / d2, y1 = u % d2;
        for (std::size_t v = u; v < d; ++v) {
            const std::size_t x2 = v / d2, y2 = v % d2;
            Vector xx = p1.product_basis(x1, x2), yy = p2.product_basis(y1, y2);
            Vector prod = kron(xx, yy);
            if (!is_zero_vector(prod)) t.algebra.set_product(u, v, prod);
            if (u == v) continue;
            Vector br = kron(p1.bracket_basis(IndexTuple{x1, x2}), yy);
            add_to(br, kron(xx, p2.bracket_basis(IndexTuple{y1, y2})));
            if (!is_zero_vector(br)) t.algebra.set_bracket(IndexTuple{u, v}, br);
        }
    }
    t.verification = verified_or_throw(t.algebra, threads, "xu_tensor");
    return t;
}

StructAlgebra iterated_bracket(const StructAlgebra& p2, std::size_t n) {
    if (p2.arity() != 2) throw std::invalid_argument("iterated_bracket needs a binary bracket");
    if (n < 2) throw std::invalid_argument("iterated_bracket needs n >= 2");
    const std::size_t d = p2.dim();
    StructAlgebra out(d, n, BracketSymmetry::General);
    for (const auto& t : all_tuples(d, n)) {
        Vector v = basis_vector(d, t[n - 1]);
        for (std::size_t s = n - 1; s-- > 0 && !is_zero_vector(v);) v = p2.bracket({basis_vector(d, t[s]), v});
        if (!is_zero_vector(v)) out.set_bracket(t, v);
    }
    for (const auto& [key, value] : p2.product_table()) {
        auto [i, j] = p2.decode_product_key(key);
        out.set_product(i, j, to_dense(value, d));
    }
    return out;
}

SkewQuotientResult skew_defect_quotient(const StructAlgebra& p, unsigned threads) {
    const std::size_t d = p.dim(), n = p.arity();
    SpanBuilder defects(d);
    if (!p.alternating()) {
        for (const auto& t : all_tuples(d, n)) {
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = i + 1; j < n; ++j) {
                    if (t[i] > t[j]) continue;
                    IndexTuple swapped = t;
                    std::swap(swapped[i], swapped[j]);
                    Vector v = p.bracket_basis(t);
                    add_to(v, p.bracket_basis(swapped));
                    defects.add(std::move(v));
                }
            }
        }
    }
    SkewQuotientResult r;
    r.defects = std::move(defects).build();
    r.ideal = ideal_closure(p, r.defects, IdealKind::Poisson);
    Quotient q = quotient(p, r.ideal, IdealKind::Poisson);
    r.complement = q.complement;
    r.algebra = to_alternating_or_throw(q.algebra, "skew_defect_quotient");
    r.verification = verified_or_throw(r.algebra, threads, "skew_defect_quotient");
    return r;
}

PoissonToNLieResult poisson_to_n_lie(const StructAlgebra& p, std::size_t n, unsigned threads) {
    PoissonToNLieResult r;
    r.tensor = xu_tensor(p, p, threads);
    r.iterated = iterated_bracket(r.tensor.algebra, n);
    r.iterated_verification = verify_axioms(r.iterated, threads);
    r.quotient = skew_defect_quotient(r.iterated, threads);
    return r;
}

LeibnizIdentityCheck check_leibniz_identity(const StructAlgebra& g, std::size_t samples, std::uint64_t seed,
                                            unsigned threads, std::size_t exhaustive_limit) {
    if (g.arity() != 2) throw std::invalid_argument("Leibniz identity needs a binary bracket");
    const std::size_t d = g.dim();
    LeibnizIdentityCheck r;
    if (d == 0) {
        r.exhaustive = true;
        return r;
    }
    std::vector<IndexTuple> triples;
    if (d * d * d <= exhaustive_limit) {
        r.exhaustive = true;
        triples = all_tuples(d, 3);
    } else {
        std::mt19937_64 rng(seed);
        std::uniform_int_distribution<std::size_t> pick(0, d - 1);
        triples.resize(samples);
        for (auto& t : triples) t = {pick(rng), pick(rng), pick(rng)};
    }
    struct Part {
        std::size_t checked = 0;
        std::optional<IndexTuple> witness;
    };
    auto parts = run_chunks<Part>(triples.size(), threads, [&](std::size_t begin, std::size_t end, Part& part) {
        for (std::size_t i = begin; i < end; ++i) {
            ++part.checked;
            const IndexTuple& t = triples[i];
            if (!is_zero_vector(fundamental_identity_defect(g, IndexTuple{t[0]}, IndexTuple{t[1], t[2]}))) {
                part.witness = t;
                return;
            }
        }
    });
    for (auto& part : parts) {
        r.checked += part.checked;
        if (part.witness) {
            r.holds = false;
            r.witness = std::move(part.witness);
            break;
        }
    }
    return r;
}

LeibnizTensorResult leibniz_tensor_functor(const StructAlgebra& l, const LeibnizTensorOptions& options) {
    TensorPower t = tensor_power(l, false, options.budget);
    LeibnizTensorResult r;
    r.identity = check_leibniz_identity(t.algebra, options.samples, options.seed, options.threads);
    if (!r.identity.holds) throw ConstructionFailure("leibniz_tensor_functor: Leibniz identity fails on the result");
    r.ad_kernel = ad_kernel(t, l.dim());
    r.kernel_is_ideal = ad_kernel_is_ideal(t, r.ad_kernel, l.dim());
    r.algebra = std::move(t.algebra);
    return r;
}

TildeQuotientResult poisson_quotient_tilde(const StructAlgebra& p, const LeibnizTensorOptions& options) {
    TensorPower t = tensor_power(p, true, options.budget);
    const StructAlgebra& g = t.algebra;
    const std::size_t big = g.dim();
    TildeQuotientResult r;
    r.identity = check_leibniz_identity(g, options.samples, options.seed, options.threads);
    if (!r.identity.holds) throw ConstructionFailure("poisson_quotient_tilde: Leibniz identity fails on the tensor power");
    r.ad_kernel = ad_kernel(t, p.dim());

    SpanBuilder sym(big);
    for (std::size_t x = 0; x < big; ++x) {
        for (std::size_t y = x; y < big; ++y) {
            Vector v = g.bracket_basis(IndexTuple{x, y});
            add_to(v, g.bracket_basis(IndexTuple{y, x}));
            sym.add(std::move(v));
        }
    }
    r.symmetric_span = std::move(sym).build();
    r.span_in_kernel = subspace_in_ad_kernel(t, r.symmetric_span, p.dim());
    r.ideal = ideal_closure(g, r.symmetric_span, IdealKind::Poisson);
    r.ideal_in_kernel = subspace_in_ad_kernel(t, r.ideal, p.dim());

    Quotient q = quotient(g, r.ideal, IdealKind::Poisson);
    r.complement = q.complement;
    r.algebra = to_alternating_or_throw(q.algebra, "poisson_quotient_tilde");
    r.verification = verified_or_throw(r.algebra, options.threads, "poisson_quotient_tilde");
    r.tensor_power = std::move(t.algebra);
    return r;
}

StructAlgebra change_basis(const StructAlgebra& p, const QMatrix& m) {
    const std::size_t d = p.dim(), n = p.arity();
    if (m.rows() != d || m.cols() != d) throw std::invalid_argument("basis change matrix has the wrong size");
    auto inv = inverse(m);
    if (!inv) throw std::invalid_argument("basis change matrix is singular");
    std::vector<Vector> cols(d);
    for (std::size_t k = 0; k < d; ++k) cols[k] = m.column(k);
    StructAlgebra out(d, n, p.symmetry());
    std::vector<Vector> args(n);
    for (const auto& t : p.alternating() ? index_subsets(d, n) : all_tuples(d, n)) {
        for (std::size_t s = 0; s < n; ++s) args[s] = cols[t[s]];
        Vector v = inv->apply(p.bracket(args));
        if (!is_zero_vector(v)) out.set_bracket(t, v);
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = i; j < d; ++j) {
            Vector v = inv->apply(p.product(cols[i], cols[j]));
            if (!is_zero_vector(v)) out.set_product(i, j, v);
        }
    }
    return out;
}

StructAlgebra permute_basis(const StructAlgebra& p, const IndexTuple& perm) {
    const std::size_t d = p.dim();
    if (perm.size() != d) throw std::invalid_argument("permutation has the wrong length");
    QMatrix m(d, d);
    for (std::size_t k = 0; k < d; ++k) m(perm[k], k) = 1;
    return change_basis(p, m);
}

StructAlgebra random_poisson_3lie(std::uint64_t seed, std::size_t max_dim) {
    if (max_dim < 3) throw std::invalid_argument("random_poisson_3lie needs max_dim >= 3");
    std::mt19937_64 rng(seed);
    auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto nonzero = [&](int bound) {
        int v = uniform(1, bound);
        return uniform(0, 1) ? v : -v;
    };
    auto pick = [&](const std::vector<StructAlgebra>& list) -> const StructAlgebra& {
        return list[static_cast<std::size_t>(uniform(0, static_cast<int>(list.size()) - 1))];
    };

    std::vector<StructAlgebra> bases = {solvable_3lie(), fixture_torus(3, 2), heisenberg_3lie(), simple_3lie(),
                                        fixture_torus(3, 3)};
    std::erase_if(bases, [&](const StructAlgebra& a) { return a.dim() > max_dim; });
    const StructAlgebra& base = pick(bases);

    StructAlgebra unit(1, 2);
    unit.set_product(0, 0, Vector{1});
    std::vector<StructAlgebra> factors = {unit};
    if (2 * base.dim() <= max_dim) {
        // f1 is the unit, f2 f2 = a f1 + b f2.
        StructAlgebra unital(2, 2);
        unital.set_product(0, 0, Vector{1, 0});
        unital.set_product(0, 1, Vector{0, 1});
        unital.set_product(1, 1, Vector{uniform(-2, 2), uniform(-2, 2)});
        factors.push_back(unital);
    }
    StructAlgebra p = tensor_poisson_n(base, pick(factors)).algebra;
    p = scaled_algebra(p, make_rational(nonzero(3), uniform(1, 2)), make_rational(nonzero(3), uniform(1, 2)));

    // Optional summand with zero bracket: a unital line or f1 f1 = c f2.
    std::vector<StructAlgebra> summands = {StructAlgebra(0, 3)};
    if (p.dim() + 1 <= max_dim) summands.push_back(unital_line(3));
    if (p.dim() + 2 <= max_dim) {
        StructAlgebra nil(2, 3);
        nil.set_product(0, 0, Vector{0, nonzero(3)});
        summands.push_back(nil);
    }
    p = direct_sum(p, pick(summands));

    const std::size_t d = p.dim();
    QMatrix m(d, d);
    do {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) m(i, j) = uniform(-2, 2);
        }
    } while (is_zero(determinant(m)));
    p = change_basis(p, m);
    if (!verify_axioms(p).all()) throw ConstructionFailure("random_poisson_3lie produced an unverified algebra");
    return p;
}

StructAlgebra direct_sum(const StructAlgebra& a, const StructAlgebra& b) {
    if (a.arity() != b.arity() || a.symmetry() != b.symmetry()) {
        throw std::invalid_argument("direct sum needs matching arity and symmetry");
    }
    const std::size_t da = a.dim(), db = b.dim();
    StructAlgebra out(da + db, a.arity(), a.symmetry());
    auto copy = [&](const StructAlgebra& src, std::size_t offset) {
        for (const auto& [key, value] : src.bracket_table()) {
            IndexTuple idx = src.decode_bracket_key(key);
            for (auto& i : idx) i += offset;
            Vector v(da + db);
            for (const auto& [i, c] : value) v[offset + i] = c;
            out.set_bracket(idx, v);
        }
        for (const auto& [key, value] : src.product_table()) {
            auto [i, j] = src.decode_product_key(key);
            Vector v(da + db);
            for (const auto& [k, c] : value) v[offset + k] = c;
            out.set_product(offset + i, offset + j, v);
        }
    };
    copy(a, 0);
    copy(b, da);
    return out;
}

}  // namespace pnlie
