#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnlie/combinatorics.hpp"
#include "pnlie/derivation.hpp"
#include "pnlie/laurent.hpp"
#include "pnlie/ring_matrix.hpp"

namespace pnlie {

/// The (n+m) x m matrix of adjoined columns.
struct AdjoinedMatrix {
    std::size_t n = 2;
    std::size_t m = 0;
    RingMatrix a;

    AdjoinedMatrix() = default;
    AdjoinedMatrix(std::size_t n, std::size_t m, std::size_t num_vars);
    AdjoinedMatrix(std::size_t n, RingMatrix entries);

    std::size_t rows() const { return n + m; }
    std::size_t num_vars() const { return a.num_vars(); }
    bool is_scalar() const { return a.is_scalar(); }
};

/// (-1)^eps(I): parity of the permutation (i_1..i_n, I^c ascending).
int complement_sign(const IndexTuple& subset, std::size_t n, std::size_t m);

/// pi^S = (-1)^eps(S) det(A_{S^c}) for S taken as a set; zero when S has
/// fewer than n entries or repeats one.
LaurentPolynomial pi_coefficient(const IndexTuple& subset, const AdjoinedMatrix& a);

/// C(s) = det[e_{s_1} .. e_{s_n} | A] for an ordered tuple: sgn(s) * pi^{sorted s},
/// zero on a repeated index.
LaurentPolynomial alternating_coefficient(std::span<const std::size_t> tuple, const AdjoinedMatrix& a);

/// Jac_I(xs) = det(d_{i_p}(x_q)).
LaurentPolynomial jac_minor(const IndexTuple& subset, std::span<const LaurentPolynomial> xs, const DerivationFamily& ds);

/// Jac_I(xs) as a signed sum over permutations sigma of the set I of
/// prod_p d_{sigma(i_p)}(x_p).
LaurentPolynomial jac_minor_permutation_sum(const IndexTuple& subset, std::span<const LaurentPolynomial> xs,
                                            const DerivationFamily& ds);

enum class BracketMethod { Full, Expanded };

/// The n-ary determinant bracket [x_1..x_n] = det[d_r(x_q) | A] over a fixed
/// adjoined matrix and a certified family of n+m commuting derivations.
class DeterminantBracket {
public:
    DeterminantBracket(AdjoinedMatrix a, DerivationFamily ds);

    std::size_t arity() const { return a_.n; }
    std::size_t rows() const { return a_.rows(); }
    std::size_t num_vars() const { return a_.num_vars(); }
    const AdjoinedMatrix& matrix() const { return a_; }
    const DerivationFamily& derivations() const { return ds_; }

    /// pi^I for the k-th subset of index_subsets(n+m, n).
    const std::vector<LaurentPolynomial>& pi_table() const { return pi_; }
    const std::vector<IndexTuple>& subsets() const { return subsets_; }

    LaurentPolynomial operator()(std::span<const LaurentPolynomial> xs, BracketMethod method = BracketMethod::Full) const;

    /// [y z, x_2..x_n] - y [z, x_2..] - z [y, x_2..].
    LaurentPolynomial leibniz_defect(const LaurentPolynomial& y, const LaurentPolynomial& z,
                                     std::span<const LaurentPolynomial> xs) const;

    /// [x_1..x_{n-1}, [y_1..y_n]] - sum_i [y_1.., [x_1..x_{n-1}, y_i], .., y_n].
    LaurentPolynomial fundamental_defect(std::span<const LaurentPolynomial> xs,
                                         std::span<const LaurentPolynomial> ys) const;

private:
    AdjoinedMatrix a_;
    DerivationFamily ds_;
    std::vector<IndexTuple> subsets_;
    std::vector<LaurentPolynomial> pi_;
};

/// Free-function forms; each builds a DeterminantBracket.
LaurentPolynomial bracket(std::span<const LaurentPolynomial> xs, const AdjoinedMatrix& a, const DerivationFamily& ds,
                          BracketMethod method = BracketMethod::Full);
LaurentPolynomial leibniz_defect(const LaurentPolynomial& y, const LaurentPolynomial& z,
                                 std::span<const LaurentPolynomial> xs, const AdjoinedMatrix& a,
                                 const DerivationFamily& ds);
LaurentPolynomial fundamental_defect(std::span<const LaurentPolynomial> xs, std::span<const LaurentPolynomial> ys,
                                     const AdjoinedMatrix& a, const DerivationFamily& ds);

/// Deterministic pool of sample ring elements: every monomial with exponents
/// in [-radius, radius]^v (indexed lazily), followed by seeded binomials.
class SamplePool {
public:
    SamplePool(std::size_t num_vars, std::uint64_t seed, std::int32_t radius = 2, std::size_t binomials = 64);

    std::uint64_t size() const { return box_size_ + binomials_.size(); }
    LaurentPolynomial element(std::uint64_t index) const;
    LaurentPolynomial box_monomial(std::uint64_t index) const;

private:
    std::size_t num_vars_;
    std::int32_t radius_;
    std::uint64_t box_size_;
    std::vector<LaurentPolynomial> binomials_;
};

struct FundamentalWitness {
    std::vector<LaurentPolynomial> xs;
    std::vector<LaurentPolynomial> ys;
    LaurentPolynomial defect;
};

struct SampledCheck {
    std::uint64_t samples = 0;
    std::uint64_t nonzero = 0;
    std::optional<FundamentalWitness> witness;
};

/// Evaluates fundamental_defect on `samples` tuples drawn from the pool
/// (seeded); the outcome is a sampled check, not a proof.
SampledCheck sample_fundamental(const DeterminantBracket& br, std::uint64_t samples, std::uint64_t seed);

/// Same for leibniz_defect.
SampledCheck sample_leibniz(const DeterminantBracket& br, std::uint64_t samples, std::uint64_t seed);

}  // namespace pnlie
