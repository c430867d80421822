#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pnlie/algebra.hpp"
#include "pnlie/axioms.hpp"
#include "pnlie/structure.hpp"

namespace pnlie {

/// Tensor-power constructions refuse to go past this many basis vectors.
constexpr std::size_t kDefaultDimensionBudget = 512;

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a constructor's output fails its own verification.
class ConstructionFailure : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Basis e_i (x) f_j sits at index i * dims[1] + j.
struct TensorAlgebra {
    StructAlgebra algebra;
    std::vector<std::size_t> factor_dims;
    AxiomReport verification;
};

/// P (x) B with [x_1(x)y_1, ..., x_n(x)y_n] = [x_1..x_n] (x) y_1...y_n and the
/// component-wise product. B must be commutative, associative, with zero
/// bracket; P must pass verify_axioms.
TensorAlgebra tensor_poisson_n(const StructAlgebra& p, const StructAlgebra& b, unsigned threads = 1);

/// Binary Poisson algebras P1 (x) P2 with
/// [x_1(x)y_1, x_2(x)y_2] = [x_1,x_2](x)y_1y_2 + x_1x_2(x)[y_1,y_2].
TensorAlgebra xu_tensor(const StructAlgebra& p1, const StructAlgebra& p2, unsigned threads = 1);

/// n-ary bracket [x_1, [x_2, ..., [x_{n-1}, x_n]...]] from a binary one, stored
/// on every tuple (no antisymmetry). The product is copied.
StructAlgebra iterated_bracket(const StructAlgebra& p2, std::size_t n);

struct SkewQuotientResult {
    /// Span of the basis skew defects [..x_i..x_j..] + [..x_j..x_i..].
    Subspace defects;
    /// Ideal closure of the defects under bracket (every slot) and product.
    Subspace ideal;
    IndexTuple complement;
    /// Alternating quotient algebra.
    StructAlgebra algebra;
    AxiomReport verification;
    bool zero_quotient() const { return algebra.dim() == 0; }
};

/// Quotient of an algebra with a general bracket by the ideal generated by its
/// skew defects. Throws ConstructionFailure when the quotient fails
/// verify_axioms.
SkewQuotientResult skew_defect_quotient(const StructAlgebra& p, unsigned threads = 1);

/// xu_tensor(P, P), iterated_bracket to arity n, skew_defect_quotient.
struct PoissonToNLieResult {
    TensorAlgebra tensor;
    StructAlgebra iterated;
    AxiomReport iterated_verification;
    SkewQuotientResult quotient;
};
PoissonToNLieResult poisson_to_n_lie(const StructAlgebra& p, std::size_t n, unsigned threads = 1);

struct LeibnizIdentityCheck {
    bool holds = true;
    bool exhaustive = false;
    std::size_t checked = 0;
    /// (x, y, z) with [x,[y,z]] != [[x,y],z] + [y,[x,z]].
    std::optional<IndexTuple> witness;
};

/// Left Leibniz identity on basis triples: all of them when dim^3 <= limit,
/// otherwise `samples` seeded random triples.
LeibnizIdentityCheck check_leibniz_identity(const StructAlgebra& g, std::size_t samples, std::uint64_t seed,
                                            unsigned threads = 1, std::size_t exhaustive_limit = 64 * 64 * 64);

struct LeibnizTensorOptions {
    std::size_t budget = kDefaultDimensionBudget;
    std::size_t samples = 4000;
    std::uint64_t seed = 0;
    unsigned threads = 1;
};

/// Binary Leibniz algebra on the (n-1)-fold tensor power of an n-Lie algebra:
/// [x, y] = sum_i y_1 (x) ... (x) [x_1..x_{n-1}, y_i] (x) ... (x) y_{n-1}.
/// Basis tuple (i_1..i_{n-1}) sits at index sum_k i_k d^{n-2-k}.
struct LeibnizTensorResult {
    StructAlgebra algebra;
    LeibnizIdentityCheck identity;
    /// {x : ad_x = 0}.
    Subspace ad_kernel;
    bool kernel_is_ideal = false;
};
LeibnizTensorResult leibniz_tensor_functor(const StructAlgebra& l, const LeibnizTensorOptions& options = {});

/// Tensor power of a Poisson n-Lie algebra with the component-wise product,
/// quotiented by the ideal generated by [x,y] + [y,x].
struct TildeQuotientResult {
    StructAlgebra tensor_power;
    LeibnizIdentityCheck identity;
    Subspace ad_kernel;
    /// Span of the basis symmetrizations [x,y] + [y,x].
    Subspace symmetric_span;
    /// Their ideal closure under bracket and product.
    Subspace ideal;
    bool span_in_kernel = false;
    bool ideal_in_kernel = false;
    IndexTuple complement;
    /// Binary alternating quotient algebra.
    StructAlgebra algebra;
    AxiomReport verification;
    bool zero_quotient() const { return algebra.dim() == 0; }
};
TildeQuotientResult poisson_quotient_tilde(const StructAlgebra& p, const LeibnizTensorOptions& options = {});

/// Same algebra in the basis given by the columns of m (old coordinates).
/// Throws std::invalid_argument when m is singular.
StructAlgebra change_basis(const StructAlgebra& p, const QMatrix& m);

/// Seeded random Poisson 3-Lie algebra of dimension <= max_dim (>= 3): a
/// tensor of a small 3-Lie Poisson algebra with a small unital algebra,
/// rescaled, plus an optional zero-bracket summand, in a random basis.
/// Always passes verify_axioms.
StructAlgebra random_poisson_3lie(std::uint64_t seed, std::size_t max_dim = 6);

/// Basis of a followed by basis of b; mixed brackets and products vanish.
StructAlgebra direct_sum(const StructAlgebra& a, const StructAlgebra& b);

/// Relabels the basis by perm: new e_k = old e_{perm[k]}.
StructAlgebra permute_basis(const StructAlgebra& p, const IndexTuple& perm);

}  // namespace pnlie
