#include <gtest/gtest.h>

#include <random>

#include "pnlie/criterion.hpp"
#include "pnlie/expr_parser.hpp"

using namespace pnlie;

namespace {

LaurentPolynomial P(const char* text, std::size_t v) { return parse_polynomial(text, v); }

DeterminantBracket euler_bracket(AdjoinedMatrix a) {
    const std::size_t v = a.num_vars();
    return DeterminantBracket(std::move(a), DerivationFamily::euler(v, v));
}

AdjoinedMatrix derivative_columns(std::size_t n, const std::vector<LaurentPolynomial>& ys) {
    const std::size_t m = ys.size(), v = n + m;
    AdjoinedMatrix a(n, m, v);
    auto ds = DerivationFamily::euler(v, v);
    for (std::size_t r = 0; r < v; ++r) {
        for (std::size_t c = 0; c < m; ++c) a.a(r, c) = ds[r].apply(ys[c]);
    }
    return a;
}

AdjoinedMatrix scaled_identity_block(std::size_t n, std::size_t m, const LaurentPolynomial& f) {
    AdjoinedMatrix a(n, m, n + m);
    for (std::size_t c = 0; c < m; ++c) a.a(c, c) = f;
    return a;
}

std::vector<Scalar> random_vector(std::mt19937_64& rng, std::size_t len) {
    std::vector<Scalar> v;
    for (std::size_t i = 0; i < len; ++i) v.push_back(make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1));
    return v;
}

}  // namespace

TEST(ModifiedSets, Substitutions) {
    auto same = modified_sets({0, 1, 2}, {0, 1, 2}, 0, 1);
    EXPECT_EQ(same.j_k, (IndexTuple{0, 1, 2}));
    EXPECT_EQ(same.i_k, (IndexTuple{0, 1, 2}));
    auto a = modified_sets({0, 1, 2}, {0, 3, 4}, 1, 1);
    EXPECT_EQ(a.j_k, (IndexTuple{0, 0, 4}));
    EXPECT_TRUE(a.j_k_degenerate);
    auto b = modified_sets({0, 1, 2}, {2, 3, 4}, 0, 1);
    EXPECT_EQ(b.i_k_t, (IndexTuple{2, 0, 2}));
    EXPECT_TRUE(b.i_k_t_degenerate);
    EXPECT_EQ(b.j_k_t, (IndexTuple{1, 3, 4}));
    EXPECT_FALSE(b.j_k_t_degenerate);
    EXPECT_THROW(modified_sets({0, 1}, {0, 1}, 2, 1), std::out_of_range);
}

TEST(Residuals, ScalarMatrixFirstConditionVanishes) {
    auto br = euler_bracket(random_scalar_matrix(3, 2, 5, 3));
    CriterionContext ctx(br);
    EXPECT_TRUE(ctx.derivatives_vanish());
    EXPECT_TRUE(residual_a({{0, 1, 2}, {1, 3, 4}, 2, 5, 0}, ctx).is_zero());
}

TEST(Residuals, SecondConditionVanishesForEqualSets) {
    auto br = euler_bracket(random_scalar_matrix(3, 2, 5, 9));
    CriterionContext ctx(br);
    for (std::uint64_t si = 0; si < 6; ++si) {
        for (std::uint64_t sj = 0; sj < 6; ++sj) {
            for (std::size_t t = 1; t < 3; ++t) EXPECT_TRUE(residual_b({{0, 2, 4}, {0, 2, 4}, si, sj, t}, ctx).is_zero());
        }
    }
}

TEST(Residuals, AllDegenerateGivesZero) {
    // n = 2, m = 0: every substitution that repeats an index contributes nothing.
    auto br = euler_bracket(AdjoinedMatrix(2, 0, 2));
    CriterionContext ctx(br);
    EXPECT_TRUE(residual_b({{0, 1}, {0, 1}, 0, 0, 1}, ctx).is_zero());
}

TEST(Criterion, TupleCount) {
    EXPECT_EQ(criterion_tuple_count(3, 2), 100u * 36u * 2u);
    EXPECT_EQ(criterion_tuple_count(4, 3), 35u * 35u * 576u * 3u);
}

TEST(Criterion, ScalarMatricesPass) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto rep = check_criterion(euler_bracket(random_scalar_matrix(3, 2, 5, seed)));
        EXPECT_EQ(rep.verdict, Verdict::Pass);
        EXPECT_TRUE(rep.int64_fast_path);
        EXPECT_EQ(rep.residual_b_checked, criterion_tuple_count(3, 2));
    }
}

TEST(Criterion, FastPathAgreesWithGenericPath) {
    // Same scalar matrix, once as constants and once multiplied by t1^0 through
    // a general derivation family that forces the generic path.
    auto a = random_scalar_matrix(3, 1, 4, 21);
    auto fast = check_criterion(euler_bracket(a));
    std::vector<Derivation> ds;
    for (std::size_t i = 0; i < 4; ++i) ds.push_back(Derivation::general(Derivation::euler(4, i).coefficients()));
    auto generic_br = DeterminantBracket(a, DerivationFamily::certify(ds));
    CriterionContext ctx(generic_br);
    std::uint64_t nonzero = 0;
    for (const auto& i : generic_br.subsets()) {
        for (const auto& j : generic_br.subsets()) {
            for (std::uint64_t si = 0; si < 6; ++si) {
                for (std::uint64_t sj = 0; sj < 6; ++sj) {
                    for (std::size_t t = 1; t < 3; ++t) nonzero += !residual_b({i, j, si, sj, t}, ctx).is_zero();
                }
            }
        }
    }
    EXPECT_EQ(nonzero, fast.residual_b_nonzero);
}

TEST(Criterion, DerivativeColumnsPass) {
    const std::size_t n = 3;
    auto rep = check_criterion(euler_bracket(derivative_columns(n, {P("t1^2*t2 + t3^-1*t4", 4)})));
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    EXPECT_GT(rep.contracted_checked, 0u);
    // The per-tuple reading with sigma(i_1) fixed is not necessary.
    EXPECT_GT(rep.strict_a_nonzero, 0u);
    auto two = check_criterion(euler_bracket(derivative_columns(2, {P("t1*t3 - t2^2", 4), P("t4^-1 + t1", 4)})));
    EXPECT_EQ(two.verdict, Verdict::Pass);
}

TEST(Criterion, ScaledIdentityBlockPasses) {
    auto rep = check_criterion(euler_bracket(scaled_identity_block(3, 2, P("t1*t4 + 2*t5^-1", 5))));
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    auto rep2 = check_criterion(euler_bracket(scaled_identity_block(2, 1, P("t2 - t3^2", 3))));
    EXPECT_EQ(rep2.verdict, Verdict::Pass);
}

TEST(Criterion, CyclicColumnFails) {
    AdjoinedMatrix a(2, 1, 3);
    a.a(0, 0) = P("t2", 3);
    a.a(1, 0) = P("t3", 3);
    a.a(2, 0) = P("t1", 3);
    auto rep = check_criterion(euler_bracket(a));
    EXPECT_EQ(rep.verdict, Verdict::Fail);
    ASSERT_TRUE(rep.counterexample.has_value());
    EXPECT_EQ(rep.counterexample->condition, "residual_a_contracted");
}

TEST(Criterion, VariableColumnIsADerivativeColumn) {
    // t_i = d_i(t_1 + .. + t_4) under Euler derivations, so the bracket is
    // Poisson; even the per-tuple residuals all vanish.
    AdjoinedMatrix a(3, 1, 4);
    for (std::size_t r = 0; r < 4; ++r) a.a(r, 0) = LaurentPolynomial::variable(4, r);
    auto rep = check_criterion(euler_bracket(a));
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    EXPECT_EQ(rep.strict_a_nonzero, 0u);
    EXPECT_EQ(sample_fundamental(euler_bracket(a), 30, 1).nonzero, 0u);
}

TEST(Criterion, BudgetIsEnforced) {
    CriterionOptions opts;
    opts.tuple_budget = 100;
    auto rep = check_criterion(euler_bracket(random_scalar_matrix(3, 2, 5, 1)), opts);
    EXPECT_EQ(rep.verdict, Verdict::BudgetExceeded);
    EXPECT_EQ(rep.residual_b_checked, 0u);
}

TEST(Criterion, ThreadCountDoesNotChangeReport) {
    AdjoinedMatrix a(2, 1, 3);
    a.a(0, 0) = P("t2", 3);
    a.a(1, 0) = P("t3", 3);
    a.a(2, 0) = P("t1", 3);
    CriterionOptions one, four;
    four.threads = 4;
    auto r1 = check_criterion(euler_bracket(a), one), r4 = check_criterion(euler_bracket(a), four);
    EXPECT_EQ(r1.contracted_nonzero, r4.contracted_nonzero);
    EXPECT_EQ(r1.strict_a_nonzero, r4.strict_a_nonzero);
    EXPECT_EQ(r1.counterexample->residual, r4.counterexample->residual);
    EXPECT_EQ(r1.counterexample->tuple.j, r4.counterexample->tuple.j);
}

TEST(Criterion, AgreesWithSampledFundamentalIdentity) {
    std::vector<AdjoinedMatrix> cases{derivative_columns(2, {P("t1*t2^-1 + t3", 3)}),
                                      scaled_identity_block(2, 1, P("t1 + t2*t3", 3)), random_scalar_matrix(2, 1, 3, 4)};
    AdjoinedMatrix bad(2, 1, 3);
    bad.a(0, 0) = P("t2", 3);
    bad.a(1, 0) = P("t3", 3);
    bad.a(2, 0) = P("t1", 3);
    cases.push_back(bad);
    AdjoinedMatrix bad2(2, 1, 3);
    bad2.a(0, 0) = P("t1^2", 3);
    bad2.a(2, 0) = P("t2", 3);
    cases.push_back(bad2);
    for (const auto& a : cases) {
        auto br = euler_bracket(a);
        bool pass = check_criterion(br).verdict == Verdict::Pass;
        bool identity = sample_fundamental(br, 60, 3).nonzero == 0;
        EXPECT_EQ(pass, identity) << matrix_to_string(a);
    }
}

TEST(GrassmannPlucker, VanishesOnRandomInputs) {
    std::mt19937_64 rng(99);
    for (std::size_t n : {3, 4, 5}) {
        for (int trial = 0; trial < 30; ++trial) {
            std::vector<std::vector<Scalar>> e, f;
            for (std::size_t i = 0; i < n; ++i) e.push_back(random_vector(rng, n - 1));
            for (std::size_t i = 2; i < n; ++i) f.push_back(random_vector(rng, n - 1));
            EXPECT_EQ(grassmann_plucker_defect(e, f), 0);
        }
    }
    EXPECT_THROW(grassmann_plucker_defect({{1, 2}}, {}), std::invalid_argument);
}

TEST(ExpansionDefect, CompleteFormEqualsFundamentalDefect) {
    std::mt19937_64 rng(4);
    std::vector<AdjoinedMatrix> cases{derivative_columns(2, {P("t1*t2^-1 + t3", 3)}), random_scalar_matrix(3, 1, 4, 2)};
    AdjoinedMatrix bad(2, 1, 3);
    bad.a(0, 0) = P("t2", 3);
    bad.a(1, 0) = P("t3", 3);
    bad.a(2, 0) = P("t1", 3);
    cases.push_back(bad);
    AdjoinedMatrix poly(3, 1, 4);
    poly.a(0, 0) = P("t1*t2", 4);
    poly.a(3, 0) = P("t3^-1", 4);
    cases.push_back(poly);
    for (const auto& a : cases) {
        auto br = euler_bracket(a);
        const std::size_t n = br.arity();
        SamplePool pool(br.num_vars(), 6);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<LaurentPolynomial> xs, ys;
            for (std::size_t i = 0; i < n; ++i) xs.push_back(pool.element(rng() % pool.size()));
            for (std::size_t i = 0; i < n; ++i) ys.push_back(pool.element(rng() % pool.size()));
            std::vector<LaurentPolynomial> tail(ys.begin() + 1, ys.end());
            LaurentPolynomial direct = br.fundamental_defect(tail, xs);
            if (n % 2 == 0) direct = -direct;
            EXPECT_EQ(expansion_defect(xs, ys, br), direct) << matrix_to_string(a);
        }
    }
}

TEST(ExpansionDefect, LiteralFormDropsTermsOnDerivativeColumns) {
    auto br = euler_bracket(derivative_columns(2, {P("t1^2*t2 + t3", 3)}));
    std::vector<LaurentPolynomial> xs{P("t1*t3", 3), P("t2^-1", 3)}, ys{P("1", 3), P("t1 + t2*t3^2", 3)};
    EXPECT_TRUE(expansion_defect(xs, ys, br).is_zero());
    EXPECT_FALSE(expansion_defect(xs, ys, br, ExpansionForm::Literal).is_zero());
}

TEST(Probe, ScalarTrialsPass) {
    auto rep = probe_conjecture(3, 2, 5, 100);
    EXPECT_EQ(rep.verdict, Verdict::Pass);
    EXPECT_EQ(rep.passed, 5u);
}
