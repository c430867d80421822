#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pnlie/jacobian.hpp"

namespace pnlie {

/// The four substituted tuples built from ordered tuples s = sigma(I) and
/// r = sigma(J) at position k (0-based) and, for the second pair, t (1..n-1):
///   J^k   = r with r_k replaced by s_1
///   I_k   = (r_k, s_2, .., s_n)
///   J^k_t = r with r_k replaced by s_t
///   I_k^t = (r_k, s_2, .., s_{t-1}, s_1, s_{t+1}, .., s_n)
/// A tuple is degenerate when it repeats an index; its coefficient is then 0.
struct ModifiedIndexSets {
    IndexTuple j_k, i_k, j_k_t, i_k_t;
    bool j_k_degenerate = false;
    bool i_k_degenerate = false;
    bool j_k_t_degenerate = false;
    bool i_k_t_degenerate = false;
};

ModifiedIndexSets modified_sets(const IndexTuple& s, const IndexTuple& r, std::size_t k, std::size_t t);

/// (I, J, sigma_I, sigma_J, t). The sigmas are Lehmer ranks of permutations
/// of the sets I and J; t is 1..n-1 (0 when unused).
struct CriterionTuple {
    IndexTuple i;
    IndexTuple j;
    std::uint64_t sigma_i = 0;
    std::uint64_t sigma_j = 0;
    std::size_t t = 0;
};

/// Precomputed coefficients C(s) and their derivatives d_a C(s) for a bracket.
class CriterionContext {
public:
    explicit CriterionContext(const DeterminantBracket& bracket);

    std::size_t n() const { return n_; }
    std::size_t rows() const { return rows_; }
    std::size_t num_vars() const { return v_; }

    /// C(s) = sgn(s) pi^{sorted s}, zero on repeats.
    LaurentPolynomial coefficient(std::span<const std::size_t> s) const;
    /// d_a C(s).
    LaurentPolynomial coefficient_derivative(std::size_t a, std::span<const std::size_t> s) const;
    /// True when every d_a pi^I vanishes, e.g. for scalar matrices.
    bool derivatives_vanish() const { return derivatives_vanish_; }

    /// Index of sorted subset with bitmask `mask`, or -1.
    int subset_index(std::uint32_t mask) const { return mask_to_index_[mask]; }
    const std::vector<LaurentPolynomial>& pi() const { return pi_; }

private:
    std::size_t n_, rows_, v_;
    std::vector<LaurentPolynomial> pi_;
    std::vector<std::vector<LaurentPolynomial>> dpi_;  // [a][subset]
    std::vector<int> mask_to_index_;
    bool derivatives_vanish_ = true;
};

/// Per-tuple reading of the first criterion condition with sigma(i_1) fixed:
/// C(s) d_{s_1} C(r) - sum_k C(J^k) d_{s_1} C(I_k).
LaurentPolynomial residual_a(const CriterionTuple& tuple, const CriterionContext& ctx);

/// First condition summed over the derivation index a in place of s_1:
/// sum_a [C(a, s') d_a C(r) - sum_k C(r[k <- a]) d_a C(r_k, s')].
/// This is the coefficient of one first-order differential monomial in the
/// fundamental-identity defect, so its vanishing for all (r, s') is
/// equivalent to the identity's first-order part vanishing.
LaurentPolynomial residual_a_contracted(const IndexTuple& r, const IndexTuple& s_tail, const CriterionContext& ctx);

/// Second condition: sum_k [C(J^k) C(I_k) + C(J^k_t) C(I_k^t)].
LaurentPolynomial residual_b(const CriterionTuple& tuple, const CriterionContext& ctx);

enum class Verdict { Pass, Fail, BudgetExceeded };
const char* verdict_name(Verdict v);

struct Counterexample {
    std::string condition;  // "residual_a_contracted" or "residual_b"
    CriterionTuple tuple;   // for residual_a_contracted: j, sigma_j and the tail in `i`
    std::string residual;
};

struct CriterionOptions {
    std::uint64_t tuple_budget = 200'000'000;
    unsigned threads = 1;
    /// Set by the ring preset; the criterion is only an equivalence when true.
    bool assumptions_hold = true;
    /// Also count the per-tuple (sigma(i_1) fixed) residuals; informational.
    bool strict_residual_a = true;
};

struct CriterionReport {
    std::size_t n = 0, m = 0;
    std::string matrix;
    bool scalar_matrix = false;
    bool assumptions_hold = true;
    std::uint64_t tuples_total = 0;      // (I, J, sigma_I, sigma_J, t) count
    std::uint64_t residual_b_checked = 0;
    std::uint64_t residual_b_nonzero = 0;
    std::uint64_t contracted_checked = 0;
    std::uint64_t contracted_nonzero = 0;
    std::uint64_t strict_a_checked = 0;
    std::uint64_t strict_a_nonzero = 0;
    bool int64_fast_path = false;
    Verdict verdict = Verdict::Pass;
    std::optional<Counterexample> counterexample;
};

/// Exhaustive check of both criterion conditions. Results, counts and the
/// first counterexample (lexicographic in (I, J, sigma_I, sigma_J, t)) do not
/// depend on the thread count.
CriterionReport check_criterion(const DeterminantBracket& bracket, const CriterionOptions& options = {});

std::uint64_t criterion_tuple_count(std::size_t n, std::size_t m);

/// sum_k (-1)^(k-1) det(e_1..^e_k..e_n) det(e_k, f_3..f_n) for vectors of length n-1.
Scalar grassmann_plucker_defect(const std::vector<std::vector<Scalar>>& e, const std::vector<std::vector<Scalar>>& f);

enum class ExpansionForm { Complete, Literal };

/// Double-sum expansion of the fundamental-identity defect for x_1..x_n and
/// y_1..y_n (y_1 is not used).
/// Complete form lets sigma(i_1) range over every derivation index, which
/// makes it equal [[x_1..x_n], y_2..y_n] - sum_k [x_1.., [x_k, y_2..y_n], .., x_n]
/// exactly; the literal form keeps sigma(i_1) outside {sigma(i_2)..sigma(i_n)}.
LaurentPolynomial expansion_defect(std::span<const LaurentPolynomial> xs, std::span<const LaurentPolynomial> ys,
                                   const DeterminantBracket& bracket, ExpansionForm form = ExpansionForm::Complete);

/// Random (n+m) x m scalar matrix with entries p/q, |p| <= 6, 1 <= q <= 3.
AdjoinedMatrix random_scalar_matrix(std::size_t n, std::size_t m, std::size_t num_vars, std::uint64_t seed);

struct ProbeReport {
    std::size_t n = 0, m = 0;
    std::uint64_t trials = 0;
    std::uint64_t passed = 0;
    std::uint64_t tuples_per_trial = 0;
    Verdict verdict = Verdict::Pass;
    std::vector<std::string> failing_matrices;
    std::vector<CriterionReport> failures;
};

/// check_criterion on `trials` seeded random scalar matrices; trial k uses
/// seed + k. Any failure is dumped verbatim.
ProbeReport probe_conjecture(std::size_t n, std::size_t m, std::uint64_t trials, std::uint64_t seed,
                             const CriterionOptions& options = {});

std::string matrix_to_string(const AdjoinedMatrix& a);

}  // namespace pnlie
