#include "pnlie/structure.hpp"

#include <deque>
#include <functional>
#include <stdexcept>

namespace pnlie {

namespace {

void check_same_space(const StructAlgebra& p, const Subspace& u) {
    if (u.ambient() != p.dim()) throw std::invalid_argument("subspace does not live in the algebra");
}

// out += c * [args] for sparse arguments.
void add_bracket_sparse(const StructAlgebra& p, const std::vector<const SparseVector*>& args, const Scalar& scale,
                        Vector& out) {
    const std::size_t n = args.size();
    IndexTuple idx(n);
    std::vector<Scalar> coeff(n + 1);
    coeff[0] = scale;
    const bool alt = p.alternating();
    std::function<void(std::size_t)> rec = [&](std::size_t slot) {
        if (slot == n) {
            p.add_bracket_basis(idx, coeff[n], out);
            return;
        }
        for (const auto& [i, c] : *args[slot]) {
            if (alt) {
                bool repeat = false;
                for (std::size_t s = 0; s < slot; ++s) repeat |= idx[s] == i;
                if (repeat) continue;
            }
            idx[slot] = i;
            coeff[slot + 1] = coeff[slot] * c;
            rec(slot + 1);
        }
    };
    rec(0);
}

Vector bracket_sparse(const StructAlgebra& p, const std::vector<const SparseVector*>& args) {
    Vector out(p.dim());
    for (const auto* a : args) {
        if (a->empty()) return out;
    }
    add_bracket_sparse(p, args, Scalar(1), out);
    return out;
}

std::vector<SparseVector> sparse_basis(const Subspace& s) {
    std::vector<SparseVector> out;
    out.reserve(s.dim());
    for (const auto& r : s.basis()) out.push_back(to_sparse(r));
    return out;
}

std::vector<SparseVector> unit_basis(std::size_t d) {
    std::vector<SparseVector> out(d);
    for (std::size_t i = 0; i < d; ++i) out[i] = {{i, Scalar(1)}};
    return out;
}

// Calls fn on [u_1..u_n] for u_i ranging over the given bases. Under an
// alternating bracket, adjacent slots holding the same space use increasing
// basis positions. Stops early when fn returns false.
bool for_each_bracket(const StructAlgebra& p, const std::vector<std::vector<SparseVector>>& bases,
                      const std::vector<bool>& same_as_previous, const std::function<bool(Vector)>& fn) {
    const std::size_t n = bases.size();
    for (const auto& b : bases) {
        if (b.empty()) return true;
    }
    std::vector<std::size_t> pos(n);
    std::vector<const SparseVector*> args(n);
    const bool alt = p.alternating();
    std::function<bool(std::size_t)> rec = [&](std::size_t slot) -> bool {
        if (slot == n) return fn(bracket_sparse(p, args));
        std::size_t start = (alt && slot > 0 && same_as_previous[slot]) ? pos[slot - 1] + 1 : 0;
        for (std::size_t k = start; k < bases[slot].size(); ++k) {
            pos[slot] = k;
            args[slot] = &bases[slot][k];
            if (!rec(slot + 1)) return false;
        }
        return true;
    };
    return rec(0);
}

// All (n-1)-tuples of basis indices used to test absorption: strictly
// increasing when the bracket is alternating.
std::vector<IndexTuple> partner_tuples(const StructAlgebra& p) {
    std::size_t k = p.arity() - 1;
    return p.alternating() ? index_subsets(p.dim(), k) : all_tuples(p.dim(), k);
}

// Images of u under every absorption operation, passed to fn until it
// returns false.
bool for_each_absorption(const StructAlgebra& p, const Vector& u, IdealKind kind,
                         const std::vector<IndexTuple>& partners, const std::function<bool(Vector)>& fn) {
    const std::size_t d = p.dim(), n = p.arity();
    if (kind == IdealKind::Poisson && !p.product_is_zero()) {
        for (std::size_t i = 0; i < d; ++i) {
            if (!fn(p.product(basis_vector(d, i), u))) return false;
        }
    }
    if (p.bracket_is_zero()) return true;
    SparseVector su = to_sparse(u);
    if (su.empty()) return true;
    std::vector<SparseVector> units = unit_basis(d);
    std::size_t positions = p.alternating() ? 1 : n;
    std::vector<const SparseVector*> args(n);
    for (std::size_t pos = 0; pos < positions; ++pos) {
        for (const auto& t : partners) {
            std::size_t k = 0;
            for (std::size_t s = 0; s < n; ++s) args[s] = s == pos ? &su : &units[t[k++]];
            if (!fn(bracket_sparse(p, args))) return false;
        }
    }
    return true;
}

Subspace kernel_of_rows(std::size_t d, SpanBuilder& rows) {
    const Subspace& r = rows.current();
    if (r.is_zero()) return Subspace::full(d);
    QMatrix m = QMatrix::from_rows(r.basis(), d);
    return Subspace::span(d, nullspace(m));
}

}  // namespace

Subspace subspace_product(const StructAlgebra& p, const Subspace& u, const Subspace& v) {
    check_same_space(p, u);
    check_same_space(p, v);
    SpanBuilder b(p.dim());
    if (p.product_is_zero() || u.is_zero() || v.is_zero()) return std::move(b).build();
    bool same = u == v;
    for (std::size_t i = 0; i < u.dim(); ++i) {
        for (std::size_t j = same ? i : 0; j < v.dim(); ++j) {
            b.add(p.product(u.basis()[i], v.basis()[j]));
            if (b.full()) return std::move(b).build();
        }
    }
    return std::move(b).build();
}

Subspace bracket_span(const StructAlgebra& p, const std::vector<Subspace>& slots) {
    if (slots.size() != p.arity()) throw std::invalid_argument("bracket_span needs one subspace per slot");
    SpanBuilder b(p.dim());
    if (p.bracket_is_zero()) return std::move(b).build();
    std::vector<std::vector<SparseVector>> bases;
    std::vector<bool> same(slots.size(), false);
    for (std::size_t s = 0; s < slots.size(); ++s) {
        check_same_space(p, slots[s]);
        bases.push_back(sparse_basis(slots[s]));
        if (s > 0) same[s] = slots[s] == slots[s - 1];
    }
    for_each_bracket(p, bases, same, [&](Vector v) {
        b.add(std::move(v));
        return !b.full();
    });
    return std::move(b).build();
}

bool is_ideal(const StructAlgebra& p, const Subspace& u, IdealKind kind) {
    check_same_space(p, u);
    auto partners = partner_tuples(p);
    for (const auto& r : u.basis()) {
        bool ok = for_each_absorption(p, r, kind, partners, [&](Vector v) { return u.contains(v); });
        if (!ok) return false;
    }
    return true;
}

bool is_subalgebra(const StructAlgebra& p, const Subspace& u) {
    check_same_space(p, u);
    if (!u.contains(subspace_product(p, u, u))) return false;
    std::vector<Subspace> slots(p.arity(), u);
    return u.contains(bracket_span(p, slots));
}

Subspace ideal_closure(const StructAlgebra& p, const Subspace& u, IdealKind kind) {
    check_same_space(p, u);
    SpanBuilder b(p.dim());
    std::deque<Vector> queue;
    for (const auto& r : u.basis()) {
        if (b.add(r)) queue.push_back(r);
    }
    auto partners = partner_tuples(p);
    while (!queue.empty() && !b.full()) {
        Vector v = std::move(queue.front());
        queue.pop_front();
        for_each_absorption(p, v, kind, partners, [&](Vector w) {
            if (b.add(w)) queue.push_back(std::move(w));
            return !b.full();
        });
    }
    return std::move(b).build();
}

std::string series_name(SeriesKind kind) {
    switch (kind) {
        case SeriesKind::Derived: return "derived";
        case SeriesKind::LowerCentral: return "lower_central";
        case SeriesKind::Subalgebra: return "subalg";
        case SeriesKind::AssocPower: return "assoc_power";
        case SeriesKind::BracketPower: return "bracket_power";
        case SeriesKind::BracketDerived: return "bracket_derived";
    }
    return "?";
}

std::optional<SeriesKind> parse_series_kind(const std::string& name) {
    for (auto k : {SeriesKind::Derived, SeriesKind::LowerCentral, SeriesKind::Subalgebra, SeriesKind::AssocPower,
                   SeriesKind::BracketPower, SeriesKind::BracketDerived}) {
        if (series_name(k) == name) return k;
    }
    return std::nullopt;
}

Subspace series_step(const StructAlgebra& p, const Subspace& ideal, const Subspace& current, SeriesKind kind) {
    const std::size_t n = p.arity(), d = p.dim();
    Subspace all = Subspace::full(d);
    auto slots_with = [&](const Subspace& first, const Subspace& second, const Subspace& rest) {
        std::vector<Subspace> slots(n, rest);
        slots[0] = first;
        if (n > 1) slots[1] = second;
        return slots;
    };
    switch (kind) {
        case SeriesKind::Derived:
            return bracket_span(p, slots_with(current, current, all)) + subspace_product(p, current, current);
        case SeriesKind::LowerCentral:
            return bracket_span(p, slots_with(current, ideal, all)) + subspace_product(p, current, ideal);
        case SeriesKind::Subalgebra:
            return bracket_span(p, slots_with(current, ideal, ideal)) + subspace_product(p, current, ideal);
        case SeriesKind::AssocPower:
            return subspace_product(p, current, ideal);
        case SeriesKind::BracketPower:
            return bracket_span(p, slots_with(current, ideal, all));
        case SeriesKind::BracketDerived:
            return bracket_span(p, slots_with(current, current, all));
    }
    throw std::logic_error("unknown series kind");
}

SeriesResult series(const StructAlgebra& p, const Subspace& ideal, SeriesKind kind) {
    check_same_space(p, ideal);
    if (p.arity() < 2) throw std::invalid_argument("series need a bracket of arity at least 2");
    switch (kind) {
        case SeriesKind::Subalgebra:
            if (!is_subalgebra(p, ideal)) throw std::invalid_argument("subalgebra series needs a subalgebra");
            break;
        case SeriesKind::BracketPower:
        case SeriesKind::BracketDerived:
            if (!is_ideal(p, ideal, IdealKind::BracketOnly)) throw std::invalid_argument("series needs an ideal");
            break;
        case SeriesKind::AssocPower:
            if (!ideal.contains(subspace_product(p, Subspace::full(p.dim()), ideal))) {
                throw std::invalid_argument("series needs an ideal");
            }
            break;
        default:
            if (!is_ideal(p, ideal)) throw std::invalid_argument("series needs an ideal");
    }
    SeriesResult r;
    r.kind = kind;
    r.terms.push_back(ideal);
    if (ideal.is_zero()) {
        r.reaches_zero = true;
        r.index = 1;
        return r;
    }
    // Terms are weakly decreasing, so at most d + 1 distinct ones.
    for (std::size_t step = 0; step <= p.dim() + 1; ++step) {
        Subspace next = series_step(p, ideal, r.terms.back(), kind);
        if (next.is_zero()) {
            r.terms.push_back(std::move(next));
            r.reaches_zero = true;
            r.index = r.terms.size();
            return r;
        }
        if (next == r.terms.back()) return r;
        r.terms.push_back(std::move(next));
    }
    throw std::logic_error("series did not stabilize");
}

bool is_nilpotent_ideal(const StructAlgebra& p, const Subspace& u, IdealKind kind) {
    return series(p, u, kind == IdealKind::Poisson ? SeriesKind::LowerCentral : SeriesKind::BracketPower).reaches_zero;
}

Classification classify(const StructAlgebra& p) {
    Classification c;
    Subspace all = Subspace::full(p.dim());
    auto derived = series(p, all, SeriesKind::Derived);
    c.solvable = derived.reaches_zero;
    c.solvability_index = derived.index;
    auto lower = series(p, all, SeriesKind::LowerCentral);
    c.nilpotent = lower.reaches_zero;
    c.nilpotency_index = lower.index;
    auto assoc = series(p, all, SeriesKind::AssocPower);
    c.pa_nilpotent = assoc.reaches_zero;
    c.pa_index = assoc.index;
    c.pl_solvable = series(p, all, SeriesKind::BracketDerived).reaches_zero;
    c.pl_nilpotent = series(p, all, SeriesKind::BracketPower).reaches_zero;
    c.nilpotent_matches_parts = c.nilpotent == (c.pa_nilpotent && c.pl_nilpotent);
    Subspace square = ideal_closure(p, series_step(p, all, all, SeriesKind::LowerCentral));
    c.solvable_matches_square = c.solvable == is_nilpotent_ideal(p, square);
    return c;
}

bool is_hypo_nilpotent(const StructAlgebra& p, const Subspace& u) {
    if (!is_ideal(p, u)) throw std::invalid_argument("hypo-nilpotency is defined for ideals");
    return series(p, u, SeriesKind::Subalgebra).reaches_zero && !series(p, u, SeriesKind::LowerCentral).reaches_zero;
}

QMatrix multiplication_operator(const StructAlgebra& p, const Vector& x) {
    const std::size_t d = p.dim();
    QMatrix m(d, d);
    for (std::size_t j = 0; j < d; ++j) {
        Vector col = p.product(x, basis_vector(d, j));
        for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

QMatrix adjoint_operator(const StructAlgebra& p, const std::vector<Vector>& y) {
    const std::size_t d = p.dim(), n = p.arity();
    if (y.size() + 1 != n) throw std::invalid_argument("adjoint operator needs arity-1 arguments");
    std::vector<SparseVector> sy;
    for (const auto& v : y) {
        if (v.size() != d) throw std::invalid_argument("vector length does not match algebra dimension");
        sy.push_back(to_sparse(v));
    }
    QMatrix m(d, d);
    std::vector<const SparseVector*> args(n);
    for (std::size_t s = 0; s + 1 < n; ++s) args[s] = &sy[s];
    for (std::size_t j = 0; j < d; ++j) {
        SparseVector e = {{j, Scalar(1)}};
        args[n - 1] = &e;
        Vector col = bracket_sparse(p, args);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

QMatrix adjoint_operator(const StructAlgebra& p, const IndexTuple& y) {
    const std::size_t d = p.dim(), n = p.arity();
    if (y.size() + 1 != n) throw std::invalid_argument("adjoint operator needs arity-1 indices");
    QMatrix m(d, d);
    IndexTuple idx(y);
    idx.push_back(0);
    for (std::size_t j = 0; j < d; ++j) {
        idx.back() = j;
        Vector col = p.bracket_basis(idx);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = col[i];
    }
    return m;
}

QMatrix restrict_operator(const QMatrix& op, const Subspace& w) {
    if (op.rows() != w.ambient() || op.cols() != w.ambient()) throw std::invalid_argument("operator size mismatch");
    const std::size_t k = w.dim();
    QMatrix m(k, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vector image = op.apply(w.basis()[j]);
        if (!w.contains(image)) throw std::invalid_argument("subspace is not invariant under the operator");
        Vector c = w.coordinates(image);
        for (std::size_t i = 0; i < k; ++i) m(i, j) = c[i];
    }
    return m;
}

EngelReport engel_check(const StructAlgebra& p) {
    EngelReport r;
    const std::size_t d = p.dim();
    for (std::size_t i = 0; i < d && r.multiplications_nilpotent; ++i) {
        if (!is_nilpotent(multiplication_operator(p, basis_vector(d, i)))) {
            r.multiplications_nilpotent = false;
            r.first_non_nilpotent_multiplication = i;
        }
    }
    for (const auto& t : partner_tuples(p)) {
        if (!is_nilpotent(adjoint_operator(p, t))) {
            r.adjoints_nilpotent = false;
            r.first_non_nilpotent_adjoint = t;
            break;
        }
    }
    return r;
}

Subspace annihilator(const StructAlgebra& p) {
    const std::size_t d = p.dim();
    SpanBuilder rows(d);
    for (std::size_t i = 0; i < d && !rows.full(); ++i) {
        QMatrix m = multiplication_operator(p, basis_vector(d, i));
        for (std::size_t k = 0; k < d; ++k) rows.add(m.row(k));
    }
    return kernel_of_rows(d, rows);
}

Subspace bracket_center(const StructAlgebra& p) {
    const std::size_t d = p.dim(), n = p.arity();
    SpanBuilder rows(d);
    // Row (t, k): coefficient of e_k in [e_j, e_t] as a function of j.
    for (const auto& t : partner_tuples(p)) {
        if (rows.full()) break;
        std::vector<Vector> cols(d);
        IndexTuple idx(n);
        for (std::size_t j = 0; j < d; ++j) {
            idx[0] = j;
            for (std::size_t s = 0; s + 1 < n; ++s) idx[s + 1] = t[s];
            cols[j] = p.bracket_basis(idx);
        }
        for (std::size_t k = 0; k < d; ++k) {
            Vector row(d);
            for (std::size_t j = 0; j < d; ++j) row[j] = cols[j][k];
            rows.add(std::move(row));
        }
    }
    Subspace center = kernel_of_rows(d, rows);
    if (!p.alternating()) {
        // Other slots for a general bracket.
        std::vector<Vector> keep;
        for (const auto& z : center.basis()) {
            bool ok = true;
            for_each_absorption(p, z, IdealKind::BracketOnly, partner_tuples(p), [&](Vector v) {
                ok = is_zero_vector(v);
                return ok;
            });
            if (ok) keep.push_back(z);
        }
        center = Subspace::span(d, keep);
    }
    return center;
}

Vector Quotient::project(const Vector& v) const {
    Vector r = ideal.reduce(v);
    Vector out(complement.size());
    for (std::size_t i = 0; i < complement.size(); ++i) out[i] = r[complement[i]];
    return out;
}

Vector Quotient::lift(const Vector& v) const {
    if (v.size() != complement.size()) throw std::invalid_argument("quotient vector has wrong length");
    Vector out(ideal.ambient());
    for (std::size_t i = 0; i < complement.size(); ++i) out[complement[i]] = v[i];
    return out;
}

Quotient quotient(const StructAlgebra& p, const Subspace& ideal, IdealKind kind) {
    check_same_space(p, ideal);
    if (!is_ideal(p, ideal, kind)) throw std::invalid_argument("quotient needs an ideal");
    Quotient q;
    q.ideal = ideal;
    q.complement = ideal.complement_indices();
    const std::size_t k = q.complement.size(), n = p.arity();
    q.algebra = StructAlgebra(k, n, p.symmetry());
    if (k == 0) return q;
    std::vector<IndexTuple> tuples = p.alternating() ? index_subsets(k, n) : all_tuples(k, n);
    IndexTuple lifted(n);
    for (const auto& t : tuples) {
        for (std::size_t s = 0; s < n; ++s) lifted[s] = q.complement[t[s]];
        Vector v = q.project(p.bracket_basis(lifted));
        if (!is_zero_vector(v)) q.algebra.set_bracket(t, v);
    }
    if (kind == IdealKind::Poisson) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = i; j < k; ++j) {
                Vector v = q.project(p.product_basis(q.complement[i], q.complement[j]));
                if (!is_zero_vector(v)) q.algebra.set_product(i, j, v);
            }
        }
    }
    return q;
}

StructAlgebra restrict_algebra(const StructAlgebra& p, const Subspace& sub) {
    if (!is_subalgebra(p, sub)) throw std::invalid_argument("restriction needs a subalgebra");
    const std::size_t k = sub.dim(), n = p.arity();
    StructAlgebra out(k, n, p.symmetry());
    auto basis = sparse_basis(sub);
    std::vector<IndexTuple> tuples = p.alternating() ? index_subsets(k, n) : all_tuples(k, n);
    std::vector<const SparseVector*> args(n);
    for (const auto& t : tuples) {
        for (std::size_t s = 0; s < n; ++s) args[s] = &basis[t[s]];
        Vector v = bracket_sparse(p, args);
        if (!is_zero_vector(v)) out.set_bracket(t, sub.coordinates(v));
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
            Vector v = p.product(sub.basis()[i], sub.basis()[j]);
            if (!is_zero_vector(v)) out.set_product(i, j, sub.coordinates(v));
        }
    }
    return out;
}

}  // namespace pnlie
