#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnlie/structure.hpp"

namespace pnlie {

struct CommonEigenvector {
    Vector v;
    /// Eigenvalue of Q_y for each strictly increasing basis tuple y, in
    /// index_subsets order.
    std::vector<IndexTuple> tuples;
    std::vector<Scalar> eigenvalues;
};

/// Rational common eigenvector of every P_x (eigenvalue 0) and every Q_y,
/// searched inside the annihilator. nullopt when no rational one exists.
/// Throws std::invalid_argument when P is not solvable.
std::optional<CommonEigenvector> common_eigenvector(const StructAlgebra& p);

/// Complete flag 0 = F_0 < F_1 < ... < F_d = P of ideals, each one
/// dimension larger. nullopt when an extension step finds no rational
/// eigenvector. Throws when P is not solvable.
std::optional<std::vector<Subspace>> solvable_flag(const StructAlgebra& p);

struct NilradicalResult {
    Subspace nilradical;
    /// Same greedy search using only the bracket.
    Subspace bracket_nilradical;
    bool agrees = false;
    /// Adapted basis the greedy search walked, deepest derived term first.
    std::vector<Vector> adapted_basis;
};

/// Greedy maximal nilpotent ideal containing P^2. Throws on non-solvable P.
NilradicalResult nilradical(const StructAlgebra& p);

struct ExtensionWitness {
    Vector x;
    /// Positions in H's RREF basis of the n-2 companion elements.
    std::optional<IndexTuple> companions;
};

struct ExtensionWitnessReport {
    std::vector<ExtensionWitness> witnesses;
    bool all_found = false;
};

/// For each x in the complement basis, searches increasing tuples
/// (m_1..m_{n-2}) of H's basis for which Q_{(x,m)} restricted to H is not
/// nilpotent. The default complement is the non-pivot coordinate vectors of H.
ExtensionWitnessReport hypo_extension_witnesses(const StructAlgebra& p, const Subspace& h,
                                                std::optional<std::vector<Vector>> complement = std::nullopt);

struct SquareActionReport {
    Subspace square;
    bool hypothesis_holds = false;
    bool product_vanishes = false;
    bool consistent() const { return !hypothesis_holds || product_vanishes; }
};

/// Is Q_{(x, m)} invertible on the ideal closure of P^2, and if so is P*P = 0?
SquareActionReport square_action_check(const StructAlgebra& p, const Vector& x, const std::vector<Vector>& m);

/// Kernel of (P_a - lambda)^d.
Subspace generalized_eigenspace(const StructAlgebra& p, const Vector& a, const Scalar& lambda);

struct IdempotentReport {
    bool idempotent = false;
    bool central = false;
    bool pa_nilpotent = false;
    bool pl_solvable = false;
    std::size_t center_dim = 0;
    /// Checked when e is a nonzero idempotent and P_L is solvable: e*P = Fe
    /// and ker P_e is an ideal complementing Fe.
    std::optional<bool> annihilator_component;
    std::string note;
};

IdempotentReport idempotent_report(const StructAlgebra& p, const Vector& e);

}  // namespace pnlie
