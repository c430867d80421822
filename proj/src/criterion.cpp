#include "pnlie/criterion.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <random>
#include <stdexcept>

#include "pnlie/linalg.hpp"
#include "pnlie/parallel.hpp"

namespace pnlie {

namespace {

constexpr std::size_t kMaxRows = 16;

bool repeats(const IndexTuple& t) { return sequence_sign(t) == 0; }

IndexTuple with_entry(IndexTuple t, std::size_t pos, std::size_t value) {
    t[pos] = value;
    return t;
}

// (head, tail_1, .., tail_{n-1})
IndexTuple prepend(std::size_t head, std::span<const std::size_t> tail) {
    IndexTuple out;
    out.reserve(tail.size() + 1);
    out.push_back(head);
    out.insert(out.end(), tail.begin(), tail.end());
    return out;
}

}  // namespace

ModifiedIndexSets modified_sets(const IndexTuple& s, const IndexTuple& r, std::size_t k, std::size_t t) {
    const std::size_t n = s.size();
    if (r.size() != n || n < 2) throw std::invalid_argument("modified sets need two n-tuples");
    if (k >= n || t < 1 || t >= n) throw std::out_of_range("modified sets: k or t out of range");
    ModifiedIndexSets out;
    out.j_k = with_entry(r, k, s[0]);
    out.i_k = with_entry(s, 0, r[k]);
    out.j_k_t = with_entry(r, k, s[t]);
    out.i_k_t = with_entry(with_entry(s, 0, r[k]), t, s[0]);
    out.j_k_degenerate = repeats(out.j_k);
    out.i_k_degenerate = repeats(out.i_k);
    out.j_k_t_degenerate = repeats(out.j_k_t);
    out.i_k_t_degenerate = repeats(out.i_k_t);
    return out;
}

CriterionContext::CriterionContext(const DeterminantBracket& bracket)
    : n_(bracket.arity()), rows_(bracket.rows()), v_(bracket.num_vars()), pi_(bracket.pi_table()) {
    if (rows_ > kMaxRows) throw std::invalid_argument("criterion supports at most 16 derivations");
    mask_to_index_.assign(std::size_t{1} << rows_, -1);
    const auto& subsets = bracket.subsets();
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        std::uint32_t mask = 0;
        for (auto i : subsets[k]) mask |= 1u << i;
        mask_to_index_[mask] = static_cast<int>(k);
    }
    const auto& ds = bracket.derivations();
    dpi_.resize(rows_);
    for (std::size_t a = 0; a < rows_; ++a) {
        dpi_[a].reserve(pi_.size());
        for (const auto& p : pi_) {
            dpi_[a].push_back(ds[a].apply(p));
            if (!dpi_[a].back().is_zero()) derivatives_vanish_ = false;
        }
    }
}

namespace {

// Returns the subset index and sign of an ordered tuple, or sign 0.
std::pair<int, int> locate(std::span<const std::size_t> s, const CriterionContext& ctx) {
    int sign = sequence_sign(s);
    if (sign == 0 || s.size() != ctx.n()) return {-1, 0};
    std::uint32_t mask = 0;
    for (auto i : s) {
        if (i >= ctx.rows()) throw std::out_of_range("index outside 1..n+m");
        mask |= 1u << i;
    }
    return {ctx.subset_index(mask), sign};
}

}  // namespace

LaurentPolynomial CriterionContext::coefficient(std::span<const std::size_t> s) const {
    auto [idx, sign] = locate(s, *this);
    if (sign == 0) return LaurentPolynomial(v_);
    return sign > 0 ? pi_[idx] : -pi_[idx];
}

LaurentPolynomial CriterionContext::coefficient_derivative(std::size_t a, std::span<const std::size_t> s) const {
    auto [idx, sign] = locate(s, *this);
    if (sign == 0) return LaurentPolynomial(v_);
    return sign > 0 ? dpi_[a][idx] : -dpi_[a][idx];
}

namespace {

// C(a, s') d_a C(r) - sum_k C(r[k <- a]) d_a C(r_k, s')
LaurentPolynomial first_condition(std::size_t a, std::span<const std::size_t> tail, const IndexTuple& r,
                                  const CriterionContext& ctx) {
    LaurentPolynomial out = ctx.coefficient(prepend(a, tail)) * ctx.coefficient_derivative(a, r);
    for (std::size_t k = 0; k < r.size(); ++k) {
        LaurentPolynomial c = ctx.coefficient(with_entry(r, k, a));
        if (c.is_zero()) continue;
        out -= c * ctx.coefficient_derivative(a, prepend(r[k], tail));
    }
    return out;
}

// sum_k C(r[k <- a]) C(r_k, s')
LaurentPolynomial second_order_coefficient(std::size_t a, std::span<const std::size_t> tail, const IndexTuple& r,
                                           const CriterionContext& ctx) {
    LaurentPolynomial out(ctx.num_vars());
    for (std::size_t k = 0; k < r.size(); ++k) {
        LaurentPolynomial c = ctx.coefficient(with_entry(r, k, a));
        if (c.is_zero()) continue;
        out += c * ctx.coefficient(prepend(r[k], tail));
    }
    return out;
}

}  // namespace

LaurentPolynomial residual_a(const CriterionTuple& tuple, const CriterionContext& ctx) {
    IndexTuple s = permute_by_rank(tuple.i, tuple.sigma_i);
    IndexTuple r = permute_by_rank(tuple.j, tuple.sigma_j);
    return first_condition(s[0], std::span<const std::size_t>(s).subspan(1), r, ctx);
}

LaurentPolynomial residual_a_contracted(const IndexTuple& r, const IndexTuple& s_tail, const CriterionContext& ctx) {
    if (s_tail.size() + 1 != ctx.n() || r.size() != ctx.n()) throw std::invalid_argument("tuple sizes");
    LaurentPolynomial out(ctx.num_vars());
    for (std::size_t a = 0; a < ctx.rows(); ++a) out += first_condition(a, s_tail, r, ctx);
    return out;
}

LaurentPolynomial residual_b(const CriterionTuple& tuple, const CriterionContext& ctx) {
    IndexTuple s = permute_by_rank(tuple.i, tuple.sigma_i);
    IndexTuple r = permute_by_rank(tuple.j, tuple.sigma_j);
    const std::size_t n = s.size(), t = tuple.t;
    if (t < 1 || t >= n) throw std::out_of_range("t must lie in 1..n-1");
    LaurentPolynomial out(ctx.num_vars());
    for (std::size_t k = 0; k < n; ++k) {
        auto sets = modified_sets(s, r, k, t);
        if (!sets.j_k_degenerate && !sets.i_k_degenerate) {
            out += ctx.coefficient(sets.j_k) * ctx.coefficient(sets.i_k);
        }
        if (!sets.j_k_t_degenerate && !sets.i_k_t_degenerate) {
            out += ctx.coefficient(sets.j_k_t) * ctx.coefficient(sets.i_k_t);
        }
    }
    return out;
}

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass:
            return "pass";
        case Verdict::Fail:
            return "fail";
        case Verdict::BudgetExceeded:
            return "budget_exceeded";
    }
    return "?";
}

std::uint64_t criterion_tuple_count(std::size_t n, std::size_t m) {
    const std::uint64_t s = binomial(n + m, n), f = factorial(n);
    return s * s * f * f * (n - 1);
}

namespace {

struct ChunkResult {
    std::uint64_t checked = 0;
    std::uint64_t nonzero = 0;
    std::optional<Counterexample> first;
};

void merge_into(const std::vector<ChunkResult>& parts, std::uint64_t& checked, std::uint64_t& nonzero,
                std::optional<Counterexample>& first) {
    for (const auto& p : parts) {
        checked += p.checked;
        nonzero += p.nonzero;
        if (!first && p.first) first = p.first;
    }
}

// Integer image of the pi table: all pi scaled by one common positive factor.
std::optional<std::vector<std::int64_t>> integer_pi(const CriterionContext& ctx) {
    mpz_class lcm_den = 1;
    for (const auto& p : ctx.pi()) {
        Scalar c = p.constant_value();
        mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    }
    std::vector<std::int64_t> out;
    out.reserve(ctx.pi().size());
    for (const auto& p : ctx.pi()) {
        mpz_class v = mpz_class(p.constant_value() * lcm_den);
        if (!v.fits_slong_p()) return std::nullopt;
        long x = v.get_si();
        // Keeps every product below 2^124 and every 2n-term sum inside __int128.
        if (x > (std::int64_t{1} << 62) || x < -(std::int64_t{1} << 62)) return std::nullopt;
        out.push_back(x);
    }
    return out;
}

struct OrderedTable {
    std::vector<std::vector<IndexTuple>> by_subset;  // [subset][rank]
};

OrderedTable ordered_table(const std::vector<IndexTuple>& subsets, std::size_t n) {
    OrderedTable t;
    t.by_subset.resize(subsets.size());
    for (std::size_t k = 0; k < subsets.size(); ++k) {
        for (std::uint64_t rank = 0; rank < factorial(n); ++rank) t.by_subset[k].push_back(permute_by_rank(subsets[k], rank));
    }
    return t;
}

}  // namespace

CriterionReport check_criterion(const DeterminantBracket& bracket, const CriterionOptions& options) {
    CriterionReport report;
    const std::size_t n = bracket.arity(), m = bracket.matrix().m, rows = n + m;
    report.n = n;
    report.m = m;
    report.matrix = matrix_to_string(bracket.matrix());
    report.scalar_matrix = bracket.matrix().is_scalar();
    report.assumptions_hold = options.assumptions_hold;
    report.tuples_total = criterion_tuple_count(n, m);
    if (rows > kMaxRows || report.tuples_total > options.tuple_budget) {
        report.verdict = Verdict::BudgetExceeded;
        return report;
    }
    CriterionContext ctx(bracket);
    const auto& subsets = bracket.subsets();
    const std::size_t num_subsets = subsets.size();
    const std::uint64_t nfact = factorial(n);
    OrderedTable table = ordered_table(subsets, n);
    const std::size_t pairs = num_subsets * num_subsets;

    // Second condition over every (I, J, sigma_I, sigma_J, t).
    std::optional<std::vector<std::int64_t>> ipi;
    if (ctx.derivatives_vanish() && report.scalar_matrix) ipi = integer_pi(ctx);
    std::vector<ChunkResult> parts;
    if (ipi) {
        report.int64_fast_path = true;
        std::vector<std::uint64_t> power(n + 1, 1);
        for (std::size_t p = 1; p <= n; ++p) power[p] = power[p - 1] * rows;
        std::vector<std::int64_t> ctab(power[n], 0);
        for (std::uint64_t code = 0; code < power[n]; ++code) {
            IndexTuple s(n);
            std::uint64_t c = code;
            for (std::size_t p = 0; p < n; ++p) {
                s[p] = c % rows;
                c /= rows;
            }
            auto [idx, sign] = locate(s, ctx);
            if (sign != 0) ctab[code] = sign * (*ipi)[idx];
        }
        auto encode = [&](const IndexTuple& s) {
            std::uint64_t code = 0;
            for (std::size_t p = 0; p < n; ++p) code += s[p] * power[p];
            return code;
        };
        parts = run_chunks<ChunkResult>(pairs, options.threads, [&](std::size_t begin, std::size_t end, ChunkResult& out) {
            for (std::size_t pair = begin; pair < end; ++pair) {
                const std::size_t ii = pair / num_subsets, jj = pair % num_subsets;
                for (std::uint64_t si = 0; si < nfact; ++si) {
                    const IndexTuple& s = table.by_subset[ii][si];
                    const auto cs = static_cast<std::int64_t>(encode(s));
                    for (std::uint64_t sj = 0; sj < nfact; ++sj) {
                        const IndexTuple& r = table.by_subset[jj][sj];
                        const auto cr = static_cast<std::int64_t>(encode(r));
                        for (std::size_t t = 1; t < n; ++t) {
                            __int128 acc = 0;
                            for (std::size_t k = 0; k < n; ++k) {
                                const auto pk = static_cast<std::int64_t>(power[k]);
                                const auto rk = static_cast<std::int64_t>(r[k]);
                                const auto s0 = static_cast<std::int64_t>(s[0]);
                                const auto st = static_cast<std::int64_t>(s[t]);
                                std::int64_t jk = ctab[cr + (s0 - rk) * pk];
                                if (jk != 0) acc += static_cast<__int128>(jk) * ctab[cs + (rk - s0)];
                                std::int64_t jkt = ctab[cr + (st - rk) * pk];
                                if (jkt != 0) {
                                    const auto pt = static_cast<std::int64_t>(power[t]);
                                    acc += static_cast<__int128>(jkt) * ctab[cs + (rk - s0) + (s0 - st) * pt];
                                }
                            }
                            ++out.checked;
                            if (acc != 0) {
                                ++out.nonzero;
                                if (!out.first) {
                                    CriterionTuple tup{subsets[ii], subsets[jj], si, sj, t};
                                    out.first = Counterexample{"residual_b", tup, residual_b(tup, ctx).to_string()};
                                }
                            }
                        }
                    }
                }
            }
        });
    } else {
        parts = run_chunks<ChunkResult>(pairs, options.threads, [&](std::size_t begin, std::size_t end, ChunkResult& out) {
            for (std::size_t pair = begin; pair < end; ++pair) {
                const std::size_t ii = pair / num_subsets, jj = pair % num_subsets;
                for (std::uint64_t si = 0; si < nfact; ++si) {
                    for (std::uint64_t sj = 0; sj < nfact; ++sj) {
                        for (std::size_t t = 1; t < n; ++t) {
                            CriterionTuple tup{subsets[ii], subsets[jj], si, sj, t};
                            LaurentPolynomial res = residual_b(tup, ctx);
                            ++out.checked;
                            if (!res.is_zero()) {
                                ++out.nonzero;
                                if (!out.first) out.first = Counterexample{"residual_b", tup, res.to_string()};
                            }
                        }
                    }
                }
            }
        });
    }
    std::optional<Counterexample> first_b;
    merge_into(parts, report.residual_b_checked, report.residual_b_nonzero, first_b);

    // First condition, contracted over the derivation index.
    const auto tails = ordered_tuples(rows, n - 1);
    std::optional<Counterexample> first_a;
    if (ctx.derivatives_vanish()) {
        // Every term carries a factor d_a(pi), which is exactly zero here.
        report.contracted_checked = num_subsets * nfact * tails.size();
        if (options.strict_residual_a) report.strict_a_checked = pairs * nfact * nfact;
    } else {
        auto a_parts = run_chunks<ChunkResult>(
            num_subsets * nfact, options.threads, [&](std::size_t begin, std::size_t end, ChunkResult& out) {
                for (std::size_t idx = begin; idx < end; ++idx) {
                    const std::size_t jj = idx / nfact;
                    const std::uint64_t sj = idx % nfact;
                    const IndexTuple& r = table.by_subset[jj][sj];
                    for (const auto& tail : tails) {
                        LaurentPolynomial res = residual_a_contracted(r, tail, ctx);
                        ++out.checked;
                        if (!res.is_zero()) {
                            ++out.nonzero;
                            if (!out.first) {
                                out.first = Counterexample{"residual_a_contracted", CriterionTuple{tail, subsets[jj], 0, sj, 0},
                                                           res.to_string()};
                            }
                        }
                    }
                }
            });
        merge_into(a_parts, report.contracted_checked, report.contracted_nonzero, first_a);
        if (options.strict_residual_a) {
            auto s_parts = run_chunks<ChunkResult>(pairs, options.threads, [&](std::size_t begin, std::size_t end, ChunkResult& out) {
                for (std::size_t pair = begin; pair < end; ++pair) {
                    const std::size_t ii = pair / num_subsets, jj = pair % num_subsets;
                    for (std::uint64_t si = 0; si < nfact; ++si) {
                        for (std::uint64_t sj = 0; sj < nfact; ++sj) {
                            ++out.checked;
                            if (!residual_a({subsets[ii], subsets[jj], si, sj, 0}, ctx).is_zero()) ++out.nonzero;
                        }
                    }
                }
            });
            std::optional<Counterexample> unused;
            merge_into(s_parts, report.strict_a_checked, report.strict_a_nonzero, unused);
        }
    }
    if (first_a) {
        report.counterexample = first_a;
    } else if (first_b) {
        report.counterexample = first_b;
    }
    report.verdict = report.counterexample ? Verdict::Fail : Verdict::Pass;
    return report;
}

Scalar grassmann_plucker_defect(const std::vector<std::vector<Scalar>>& e, const std::vector<std::vector<Scalar>>& f) {
    const std::size_t n = e.size();
    if (n < 2 || f.size() + 2 != n) throw std::invalid_argument("need n vectors e and n-2 vectors f");
    for (const auto& v : e) {
        if (v.size() != n - 1) throw std::invalid_argument("vectors must have length n-1");
    }
    for (const auto& v : f) {
        if (v.size() != n - 1) throw std::invalid_argument("vectors must have length n-1");
    }
    Scalar sum = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Vector> left, right{e[k]};
        for (std::size_t i = 0; i < n; ++i) {
            if (i != k) left.push_back(e[i]);
        }
        right.insert(right.end(), f.begin(), f.end());
        Scalar term = determinant(QMatrix::from_rows(left, n - 1)) * determinant(QMatrix::from_rows(right, n - 1));
        if (k % 2) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    return sum;
}

LaurentPolynomial expansion_defect(std::span<const LaurentPolynomial> xs, std::span<const LaurentPolynomial> ys,
                                   const DeterminantBracket& bracket, ExpansionForm form) {
    const std::size_t n = bracket.arity(), rows = bracket.rows(), v = bracket.num_vars();
    if (xs.size() != n || ys.size() != n) throw std::invalid_argument("expansion defect needs n xs and n ys");
    const auto& ds = bracket.derivations();
    CriterionContext ctx(bracket);
    std::vector<std::vector<LaurentPolynomial>> dx(rows), dy(rows);
    std::vector<std::vector<std::vector<LaurentPolynomial>>> ddy(rows, std::vector<std::vector<LaurentPolynomial>>(rows));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t p = 0; p < n; ++p) {
            dx[r].push_back(ds[r].apply(xs[p]));
            dy[r].push_back(ds[r].apply(ys[p]));
        }
    }
    for (std::size_t a = 0; a < rows; ++a) {
        for (std::size_t r = 0; r < rows; ++r) {
            for (std::size_t q = 0; q < n; ++q) ddy[a][r].push_back(ds[a].apply(dy[r][q]));
        }
    }
    const auto rs = ordered_tuples(rows, n);
    std::vector<LaurentPolynomial> xr;
    xr.reserve(rs.size());
    for (const auto& r : rs) {
        LaurentPolynomial prod = LaurentPolynomial::constant(v, 1);
        for (std::size_t p = 0; p < n && !prod.is_zero(); ++p) prod *= dx[r[p]][p];
        xr.push_back(std::move(prod));
    }
    LaurentPolynomial first(v), second(v);
    for (const auto& tail : ordered_tuples(rows, n - 1)) {
        // tail[q-1] carries y_{q+1} (q = 1..n-1).
        LaurentPolynomial y_prod = LaurentPolynomial::constant(v, 1);
        for (std::size_t q = 1; q < n; ++q) y_prod *= dy[tail[q - 1]][q];
        for (std::size_t a = 0; a < rows; ++a) {
            if (form == ExpansionForm::Literal && std::find(tail.begin(), tail.end(), a) != tail.end()) continue;
            LaurentPolynomial sum_a(v), sum_b(v);
            for (std::size_t ri = 0; ri < rs.size(); ++ri) {
                if (xr[ri].is_zero()) continue;
                LaurentPolynomial ca = first_condition(a, tail, rs[ri], ctx);
                if (!ca.is_zero()) sum_a += ca * xr[ri];
                LaurentPolynomial cb = second_order_coefficient(a, tail, rs[ri], ctx);
                if (!cb.is_zero()) sum_b += cb * xr[ri];
            }
            if (!sum_a.is_zero()) first += sum_a * y_prod;
            if (sum_b.is_zero()) continue;
            LaurentPolynomial nested(v);
            for (std::size_t t = 1; t < n; ++t) {
                LaurentPolynomial term = ddy[a][tail[t - 1]][t];
                for (std::size_t q = 1; q < n && !term.is_zero(); ++q) {
                    if (q != t) term *= dy[tail[q - 1]][q];
                }
                nested += term;
            }
            second += sum_b * nested;
        }
    }
    return first - second;
}

AdjoinedMatrix random_scalar_matrix(std::size_t n, std::size_t m, std::size_t num_vars, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    AdjoinedMatrix a(n, m, num_vars);
    for (std::size_t r = 0; r < n + m; ++r) {
        for (std::size_t c = 0; c < m; ++c) {
            auto p = static_cast<long>(rng() % 13) - 6;
            auto q = static_cast<long>(rng() % 3) + 1;
            a.a(r, c) = LaurentPolynomial::constant(num_vars, make_rational(p, q));
        }
    }
    return a;
}

ProbeReport probe_conjecture(std::size_t n, std::size_t m, std::uint64_t trials, std::uint64_t seed,
                             const CriterionOptions& options) {
    ProbeReport out;
    out.n = n;
    out.m = m;
    out.tuples_per_trial = criterion_tuple_count(n, m);
    if (out.tuples_per_trial > options.tuple_budget) {
        out.verdict = Verdict::BudgetExceeded;
        return out;
    }
    const std::size_t rows = n + m;
    auto ds = DerivationFamily::euler(rows, rows);
    for (std::uint64_t k = 0; k < trials; ++k) {
        DeterminantBracket br(random_scalar_matrix(n, m, rows, seed + k), ds);
        CriterionReport rep = check_criterion(br, options);
        ++out.trials;
        if (rep.verdict == Verdict::Pass) {
            ++out.passed;
        } else {
            out.failing_matrices.push_back(rep.matrix);
            out.failures.push_back(std::move(rep));
        }
    }
    out.verdict = out.passed == out.trials ? Verdict::Pass : Verdict::Fail;
    return out;
}

std::string matrix_to_string(const AdjoinedMatrix& a) {
    std::string s = "[";
    for (std::size_t r = 0; r < a.rows(); ++r) {
        if (r) s += "; ";
        for (std::size_t c = 0; c < a.m; ++c) {
            if (c) s += ", ";
            s += a.a(r, c).to_string();
        }
    }
    return s + "]";
}

}  // namespace pnlie
