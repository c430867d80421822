#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnlie/algebra.hpp"

namespace pnlie {

/// Which operations an ideal must absorb.
enum class IdealKind { Poisson, BracketOnly };

/// Span of all products u*v with u in U, v in V.
Subspace subspace_product(const StructAlgebra& p, const Subspace& u, const Subspace& v);

/// Span of all brackets [u_1, ..., u_n] with u_i drawn from slots[i].
Subspace bracket_span(const StructAlgebra& p, const std::vector<Subspace>& slots);

/// P*U in U and [U, P, ..., P] in U (every slot when the bracket is not
/// alternating). BracketOnly drops the product condition.
bool is_ideal(const StructAlgebra& p, const Subspace& u, IdealKind kind = IdealKind::Poisson);
bool is_subalgebra(const StructAlgebra& p, const Subspace& u);
Subspace ideal_closure(const StructAlgebra& p, const Subspace& u, IdealKind kind = IdealKind::Poisson);

enum class SeriesKind {
    Derived,         // I(k+1) = [I(k), I(k), P..P] + I(k)*I(k)
    LowerCentral,    // I^(k+1) = [I^k, I, P..P] + I^k*I
    Subalgebra,      // I[k+1] = [I[k], I..I] + I[k]*I
    AssocPower,      // I^(k+1) = I^k * I
    BracketPower,    // I^(k+1) = [I^k, I, P..P]
    BracketDerived,  // I(k+1) = [I(k), I(k), P..P]
};

std::string series_name(SeriesKind kind);
std::optional<SeriesKind> parse_series_kind(const std::string& name);

struct SeriesResult {
    SeriesKind kind{};
    /// terms[0] is I itself; the list stops at zero or at the first repeat.
    std::vector<Subspace> terms;
    bool reaches_zero = false;
    /// One-based position of the zero term, 0 when the series stabilizes
    /// above zero.
    std::size_t index = 0;
};

/// One step of the recursion from `current`.
Subspace series_step(const StructAlgebra& p, const Subspace& ideal, const Subspace& current, SeriesKind kind);
SeriesResult series(const StructAlgebra& p, const Subspace& ideal, SeriesKind kind);

/// Lower central series of U as an ideal reaches zero.
bool is_nilpotent_ideal(const StructAlgebra& p, const Subspace& u, IdealKind kind = IdealKind::Poisson);

struct Classification {
    bool solvable = false;
    std::size_t solvability_index = 0;
    bool nilpotent = false;
    std::size_t nilpotency_index = 0;
    bool pa_nilpotent = false;
    std::size_t pa_index = 0;
    bool pl_solvable = false;
    bool pl_nilpotent = false;
    /// nilpotent == (pa_nilpotent && pl_nilpotent)
    bool nilpotent_matches_parts = false;
    /// solvable == (P^2 is a nilpotent ideal)
    bool solvable_matches_square = false;
};

Classification classify(const StructAlgebra& p);

/// Nilpotent as a subalgebra but not as an ideal. Throws on a non-ideal.
bool is_hypo_nilpotent(const StructAlgebra& p, const Subspace& u);

/// P_x: v -> x*v.
QMatrix multiplication_operator(const StructAlgebra& p, const Vector& x);
/// Q_y: v -> [y_1, ..., y_{n-1}, v].
QMatrix adjoint_operator(const StructAlgebra& p, const std::vector<Vector>& y);
QMatrix adjoint_operator(const StructAlgebra& p, const IndexTuple& y);
/// Matrix of op on W in the basis of W. Throws when W is not invariant.
QMatrix restrict_operator(const QMatrix& op, const Subspace& w);

struct EngelReport {
    bool multiplications_nilpotent = true;
    bool adjoints_nilpotent = true;
    std::optional<std::size_t> first_non_nilpotent_multiplication;
    std::optional<IndexTuple> first_non_nilpotent_adjoint;
    bool all_nilpotent() const { return multiplications_nilpotent && adjoints_nilpotent; }
};

/// Nilpotency of P_{e_i} for every basis vector and Q_y for every strictly
/// increasing basis tuple.
EngelReport engel_check(const StructAlgebra& p);

/// {v : x*v = 0 for all x}
Subspace annihilator(const StructAlgebra& p);
/// {z : [z, P, ..., P] = 0}
Subspace bracket_center(const StructAlgebra& p);

/// Quotient by an ideal, with the complement spanned by the non-pivot
/// coordinate vectors of the ideal.
struct Quotient {
    StructAlgebra algebra;
    Subspace ideal;
    IndexTuple complement;

    Vector project(const Vector& v) const;
    Vector lift(const Vector& v) const;
};

Quotient quotient(const StructAlgebra& p, const Subspace& ideal, IdealKind kind = IdealKind::Poisson);

/// Algebra restricted to a subalgebra, in the subalgebra's RREF basis.
StructAlgebra restrict_algebra(const StructAlgebra& p, const Subspace& sub);

}  // namespace pnlie
