#include "pnlie/solvable.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace pnlie {

namespace {

constexpr std::size_t kEigenSearchNodeBudget = 200000;

void require_solvable(const StructAlgebra& p) {
    if (!series(p, Subspace::full(p.dim()), SeriesKind::Derived).reaches_zero) {
        throw std::invalid_argument("algebra is not solvable");
    }
}

// W ∩ ker(op - mu).
Subspace kernel_within(const QMatrix& op, const Scalar& mu, const Subspace& w) {
    const std::size_t d = w.ambient(), k = w.dim();
    QMatrix m(d, k);
    for (std::size_t j = 0; j < k; ++j) {
        Vector image = op.apply(w.basis()[j]);
        for (std::size_t i = 0; i < d; ++i) m(i, j) = image[i] - mu * w.basis()[j][i];
    }
    std::vector<Vector> out;
    for (const auto& a : nullspace(m)) {
        Vector x(d);
        for (std::size_t j = 0; j < k; ++j) {
            if (is_zero(a[j])) continue;
            for (std::size_t i = 0; i < d; ++i) x[i] += a[j] * w.basis()[j][i];
        }
        out.push_back(std::move(x));
    }
    return Subspace::span(d, out);
}

std::optional<CommonEigenvector> eigen_search(const StructAlgebra& p) {
    if (!p.alternating()) throw std::invalid_argument("eigenvector search needs an alternating bracket");
    const std::size_t d = p.dim();
    if (d == 0) return std::nullopt;
    Subspace start = annihilator(p);
    if (start.is_zero()) return std::nullopt;
    auto tuples = index_subsets(d, p.arity() - 1);
    std::vector<QMatrix> ops;
    std::vector<std::vector<Scalar>> candidates;
    for (const auto& t : tuples) {
        QMatrix op = adjoint_operator(p, t);
        if (op.is_zero()) continue;
        auto roots = rational_roots(charpoly(op));
        std::stable_partition(roots.begin(), roots.end(), [](const Scalar& r) { return is_zero(r); });
        ops.push_back(std::move(op));
        candidates.push_back(std::move(roots));
    }
    std::size_t nodes = 0;
    std::function<std::optional<Subspace>(std::size_t, const Subspace&)> dfs =
        [&](std::size_t j, const Subspace& w) -> std::optional<Subspace> {
        if (++nodes > kEigenSearchNodeBudget) throw std::runtime_error("eigenvector search budget exceeded");
        if (j == ops.size()) return w;
        for (const auto& mu : candidates[j]) {
            Subspace next = kernel_within(ops[j], mu, w);
            if (next.is_zero()) continue;
            if (auto found = dfs(j + 1, next)) return found;
        }
        return std::nullopt;
    };
    auto found = dfs(0, start);
    if (!found) return std::nullopt;
    CommonEigenvector ev;
    ev.v = found->basis().front();
    ev.tuples = tuples;
    std::size_t lead = found->pivots().front();
    for (const auto& t : tuples) {
        Vector image = adjoint_operator(p, t).apply(ev.v);
        ev.eigenvalues.push_back(image[lead] / ev.v[lead]);
    }
    return ev;
}

Subspace greedy_nilradical(const StructAlgebra& p, const std::vector<Vector>& adapted, IdealKind kind) {
    const std::size_t d = p.dim();
    Subspace all = Subspace::full(d);
    Subspace square = kind == IdealKind::Poisson ? series_step(p, all, all, SeriesKind::LowerCentral)
                                                 : series_step(p, all, all, SeriesKind::BracketPower);
    Subspace n = ideal_closure(p, square, kind);
    if (!is_nilpotent_ideal(p, n, kind)) throw std::logic_error("square of a solvable algebra is not nilpotent");
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& v : adapted) {
            if (n.contains(v)) continue;
            Subspace candidate = ideal_closure(p, n + Subspace::span(d, {v}), kind);
            if (is_nilpotent_ideal(p, candidate, kind)) {
                n = std::move(candidate);
                changed = true;
            }
        }
    }
    return n;
}

}  // namespace

std::optional<CommonEigenvector> common_eigenvector(const StructAlgebra& p) {
    require_solvable(p);
    return eigen_search(p);
}

std::optional<std::vector<Subspace>> solvable_flag(const StructAlgebra& p) {
    require_solvable(p);
    const std::size_t d = p.dim();
    std::vector<Subspace> chain{Subspace::zero(d)};
    Subspace w = Subspace::zero(d);
    while (w.dim() < d) {
        Quotient q = quotient(p, w);
        auto ev = eigen_search(q.algebra);
        if (!ev) return std::nullopt;
        w = w + Subspace::span(d, {q.lift(ev->v)});
        chain.push_back(w);
    }
    return chain;
}

NilradicalResult nilradical(const StructAlgebra& p) {
    require_solvable(p);
    const std::size_t d = p.dim();
    NilradicalResult r;
    auto derived = series(p, Subspace::full(d), SeriesKind::Derived);
    SpanBuilder b(d);
    for (auto it = derived.terms.rbegin(); it != derived.terms.rend(); ++it) {
        for (const auto& row : it->basis()) {
            if (b.add(row)) r.adapted_basis.push_back(row);
        }
    }
    r.nilradical = greedy_nilradical(p, r.adapted_basis, IdealKind::Poisson);
    r.bracket_nilradical = greedy_nilradical(p, r.adapted_basis, IdealKind::BracketOnly);
    r.agrees = r.nilradical == r.bracket_nilradical;
    return r;
}

ExtensionWitnessReport hypo_extension_witnesses(const StructAlgebra& p, const Subspace& h,
                                                std::optional<std::vector<Vector>> complement) {
    if (!is_ideal(p, h)) throw std::invalid_argument("H must be an ideal");
    const std::size_t d = p.dim(), n = p.arity();
    if (n < 2) throw std::invalid_argument("arity must be at least 2");
    std::vector<Vector> xs;
    if (complement) {
        xs = *complement;
    } else {
        for (std::size_t j : h.complement_indices()) xs.push_back(basis_vector(d, j));
    }
    ExtensionWitnessReport r;
    r.all_found = true;
    auto tuples = index_subsets(h.dim(), n - 2);
    for (const auto& x : xs) {
        ExtensionWitness w{x, std::nullopt};
        for (const auto& t : tuples) {
            std::vector<Vector> y{x};
            for (std::size_t i : t) y.push_back(h.basis()[i]);
            QMatrix restricted = restrict_operator(adjoint_operator(p, y), h);
            if (!is_nilpotent(restricted)) {
                w.companions = t;
                break;
            }
        }
        r.all_found &= w.companions.has_value();
        r.witnesses.push_back(std::move(w));
    }
    return r;
}

SquareActionReport square_action_check(const StructAlgebra& p, const Vector& x, const std::vector<Vector>& m) {
    SquareActionReport r;
    Subspace all = Subspace::full(p.dim());
    r.square = ideal_closure(p, series_step(p, all, all, SeriesKind::LowerCentral));
    std::vector<Vector> y{x};
    y.insert(y.end(), m.begin(), m.end());
    QMatrix op = adjoint_operator(p, y);
    r.hypothesis_holds = r.square.is_zero() || !is_zero(determinant(restrict_operator(op, r.square)));
    r.product_vanishes = p.product_is_zero();
    return r;
}

Subspace generalized_eigenspace(const StructAlgebra& p, const Vector& a, const Scalar& lambda) {
    const std::size_t d = p.dim();
    QMatrix shifted = multiplication_operator(p, a) - QMatrix::identity(d).scaled(lambda);
    return Subspace::span(d, nullspace(shifted.pow(d)));
}

IdempotentReport idempotent_report(const StructAlgebra& p, const Vector& e) {
    const std::size_t d = p.dim();
    IdempotentReport r;
    Subspace all = Subspace::full(d);
    r.idempotent = p.product(e, e) == e;
    Subspace center = bracket_center(p);
    r.center_dim = center.dim();
    r.central = center.contains(e);
    r.pa_nilpotent = series(p, all, SeriesKind::AssocPower).reaches_zero;
    r.pl_solvable = series(p, all, SeriesKind::BracketDerived).reaches_zero;
    bool nonzero = !is_zero_vector(e);
    if (!nonzero) {
        r.note = "zero element: idempotent and central";
    } else if (!r.idempotent) {
        r.note = r.pa_nilpotent ? "P_A is nilpotent, so it has no nonzero idempotent" : "e*e != e";
    } else if (r.pl_solvable) {
        QMatrix pe = multiplication_operator(p, e);
        std::vector<Vector> cols;
        for (std::size_t j = 0; j < d; ++j) cols.push_back(pe.column(j));
        Subspace image = Subspace::span(d, cols);
        Subspace line = Subspace::span(d, {e});
        Subspace kernel = Subspace::span(d, nullspace(pe));
        r.annihilator_component = image == line && is_ideal(p, kernel) && is_ideal(p, line) &&
                                  (line + kernel).is_full() && line.intersect(kernel).is_zero();
        r.note = *r.annihilator_component ? "Fe is an annihilator component" : "Fe does not split off";
    } else {
        r.note = "P_L is not solvable; splitting not checked";
    }
    return r;
}

}  // namespace pnlie
