#include <gtest/gtest.h>

#include <random>

#include "pnlie/algebra_io.hpp"
#include "pnlie/axioms.hpp"
#include "pnlie/expr_parser.hpp"
#include "pnlie/fixtures.hpp"
#include "pnlie/solvable.hpp"

using namespace pnlie;

namespace {

Vector e(std::size_t d, std::size_t one_based) { return basis_vector(d, one_based - 1); }

Subspace coords(std::size_t d, std::initializer_list<std::size_t> one_based) {
    IndexTuple idx;
    for (auto i : one_based) idx.push_back(i - 1);
    return Subspace::coordinate(d, idx);
}

// I_1 = span(all but e5), I_2 = span(all but e4) in fixture_hypo(4, 6).
Subspace hypo_i1() { return coords(7, {1, 2, 3, 4, 6, 7}); }
Subspace hypo_i2() { return coords(7, {1, 2, 3, 5, 6, 7}); }

}  // namespace

TEST(Subspace, RrefIsCanonical) {
    Subspace a = Subspace::span(3, {{1, 1, 0}, {0, 1, 1}});
    Subspace b = Subspace::span(3, {{1, 2, 1}, {1, 0, -1}});
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.dim(), 2u);
    EXPECT_TRUE(a.contains(Vector{2, 1, -1}));
    EXPECT_FALSE(a.contains(Vector{1, 0, 0}));
    EXPECT_EQ(a.complement_indices(), (IndexTuple{2}));
}

TEST(Subspace, SumAndIntersection) {
    Subspace a = coords(4, {1, 2});
    Subspace b = Subspace::span(4, {{0, 1, 1, 0}, {0, 0, 0, 1}});
    EXPECT_EQ((a + b).dim(), 4u);
    EXPECT_TRUE(a.intersect(b).is_zero());
    Subspace c = Subspace::span(4, {{1, 1, 0, 0}, {0, 0, 1, 0}});
    EXPECT_EQ(a.intersect(c), Subspace::span(4, {{1, 1, 0, 0}}));
    EXPECT_EQ(a.intersect(Subspace::full(4)), a);
}

TEST(StructAlgebra, AlternatingStorageSigns) {
    StructAlgebra p(3, 3);
    p.set_bracket(IndexTuple{1, 0, 2}, e(3, 1));
    EXPECT_EQ(p.bracket_basis(IndexTuple{0, 1, 2}), (Vector{-1, 0, 0}));
    EXPECT_EQ(p.bracket_basis(IndexTuple{2, 1, 0}), (Vector{1, 0, 0}));
    EXPECT_TRUE(is_zero_vector(p.bracket_basis(IndexTuple{0, 0, 2})));
    EXPECT_THROW(p.set_bracket(IndexTuple{0, 0, 1}, e(3, 1)), std::invalid_argument);
    // Multilinear evaluation.
    Vector v = p.bracket({Vector{1, 1, 0}, Vector{0, 2, 0}, Vector{0, 0, 3}});
    EXPECT_EQ(v, (Vector{-6, 0, 0}));
}

TEST(StructAlgebra, ToAlternatingRejectsNonSkew) {
    StructAlgebra g(2, 2, BracketSymmetry::General);
    g.set_bracket(IndexTuple{0, 1}, e(2, 2));
    EXPECT_THROW(g.to_alternating(), std::domain_error);
    g.set_bracket(IndexTuple{1, 0}, Vector{0, -1});
    StructAlgebra a = g.to_alternating();
    EXPECT_EQ(a, lie_plane());
}

TEST(Axioms, AbelianPasses) {
    auto r = verify_axioms(abelian_algebra(4, 3));
    EXPECT_TRUE(r.all());
}

TEST(Axioms, FixturesPass) {
    for (const auto& name : fixture_names()) {
        auto r = verify_axioms(named_fixture(name));
        EXPECT_TRUE(r.all()) << name;
    }
    EXPECT_TRUE(verify_axioms(fixture_hypo(5, 7)).all());
    EXPECT_TRUE(verify_axioms(fixture_torus(4, 5)).all());
}

TEST(Axioms, LeibnizBreakingPerturbationIsLocated) {
    StructAlgebra p = fixture_hypo();
    p.set_product(3, 3, e(7, 1));
    auto r = verify_axioms(p);
    EXPECT_FALSE(r.leibniz.holds);
    ASSERT_TRUE(r.leibniz.witness.has_value());
    const IndexTuple& w = *r.leibniz.witness;
    // [y z, x...] != y [z, x...] + z [y, x...] at the reported basis tuple.
    std::vector<Vector> lhs_args{p.product(e(7, w[0] + 1), e(7, w[1] + 1))};
    std::vector<Vector> zx{e(7, w[1] + 1)}, yx{e(7, w[0] + 1)};
    for (std::size_t k = 2; k < w.size(); ++k) {
        lhs_args.push_back(e(7, w[k] + 1));
        zx.push_back(e(7, w[k] + 1));
        yx.push_back(e(7, w[k] + 1));
    }
    Vector lhs = p.bracket(lhs_args);
    Vector rhs = p.product(e(7, w[0] + 1), p.bracket(zx));
    Vector t = p.product(e(7, w[1] + 1), p.bracket(yx));
    for (std::size_t k = 0; k < 7; ++k) rhs[k] += t[k];
    EXPECT_NE(lhs, rhs);
    EXPECT_TRUE(r.fundamental.holds);
}

TEST(Axioms, FundamentalFailureHasNonzeroDefect) {
    StructAlgebra p(4, 3);
    p.set_bracket(IndexTuple{0, 1, 2}, e(4, 1));
    p.set_bracket(IndexTuple{0, 1, 3}, e(4, 3));
    auto r = verify_axioms(p);
    ASSERT_FALSE(r.fundamental.holds);
    const IndexTuple& w = *r.fundamental.witness;
    IndexTuple xs(w.begin(), w.begin() + 2), ys(w.begin() + 2, w.end());
    EXPECT_FALSE(is_zero_vector(fundamental_identity_defect(p, xs, ys)));
}

TEST(Axioms, ThreadCountDoesNotChangeReport) {
    StructAlgebra p = fixture_hypo();
    p.set_product(3, 3, e(7, 1));
    auto a = verify_axioms(p, 1), b = verify_axioms(p, 8);
    EXPECT_EQ(a.leibniz.witness, b.leibniz.witness);
    EXPECT_EQ(a.leibniz.holds, b.leibniz.holds);
}

TEST(Spans, ProductsAndBrackets) {
    StructAlgebra p = fixture_hypo();
    EXPECT_EQ(subspace_product(p, coords(7, {4}), coords(7, {5})), coords(7, {7}));
    EXPECT_TRUE(subspace_product(p, coords(7, {4}), Subspace::zero(7)).is_zero());
    EXPECT_EQ(bracket_span(p, {coords(7, {1}), coords(7, {4}), coords(7, {5}), coords(7, {6})}), coords(7, {1}));
}

TEST(Ideals, HypoFixture) {
    StructAlgebra p = fixture_hypo();
    EXPECT_TRUE(is_ideal(p, Subspace::full(7)));
    EXPECT_TRUE(is_ideal(p, Subspace::zero(7)));
    EXPECT_TRUE(is_ideal(p, hypo_i1()));
    EXPECT_TRUE(is_ideal(p, hypo_i2()));
    EXPECT_FALSE(is_ideal(p, coords(7, {4})));
    EXPECT_EQ(ideal_closure(p, coords(7, {4})), coords(7, {1, 2, 3, 4, 7}));
}

TEST(Series, HypoDerivedSeries) {
    StructAlgebra p = fixture_hypo();
    auto s = series(p, Subspace::full(7), SeriesKind::Derived);
    ASSERT_EQ(s.terms.size(), 3u);
    EXPECT_EQ(s.terms[1], coords(7, {1, 2, 3, 7}));
    EXPECT_TRUE(s.terms[2].is_zero());
    EXPECT_TRUE(s.reaches_zero);
    EXPECT_EQ(s.index, 3u);
}

TEST(Series, HypoIdealSeries) {
    StructAlgebra p = fixture_hypo();
    for (const auto& ideal : {hypo_i1(), hypo_i2()}) {
        auto lower = series(p, ideal, SeriesKind::LowerCentral);
        EXPECT_FALSE(lower.reaches_zero);
        for (const auto& t : lower.terms) EXPECT_TRUE(t.contains(coords(7, {1, 2, 3})));
        auto sub = series(p, ideal, SeriesKind::Subalgebra);
        EXPECT_TRUE(sub.reaches_zero);
        EXPECT_EQ(sub.index, 2u);
    }
}

TEST(Series, RejectsNonIdeal) {
    EXPECT_THROW(series(fixture_hypo(), coords(7, {4}), SeriesKind::LowerCentral), std::invalid_argument);
}

TEST(Classify, Abelian) {
    auto c = classify(abelian_algebra(3, 3));
    EXPECT_TRUE(c.nilpotent);
    EXPECT_EQ(c.nilpotency_index, 2u);
}

TEST(Classify, HypoFixture) {
    auto c = classify(fixture_hypo());
    EXPECT_TRUE(c.solvable);
    EXPECT_EQ(c.solvability_index, 3u);
    EXPECT_FALSE(c.nilpotent);
    EXPECT_TRUE(c.pa_nilpotent);
    EXPECT_FALSE(c.pl_nilpotent);
    EXPECT_TRUE(c.nilpotent_matches_parts);
    EXPECT_TRUE(c.solvable_matches_square);
}

TEST(Classify, HypoSquareAsStandaloneAlgebraIsNilpotent) {
    StructAlgebra p = fixture_hypo();
    StructAlgebra m = restrict_algebra(p, coords(7, {1, 2, 3, 7}));
    EXPECT_EQ(m.dim(), 4u);
    EXPECT_TRUE(m.bracket_is_zero());
    EXPECT_TRUE(m.product_is_zero());
    EXPECT_TRUE(classify(m).nilpotent);
}

TEST(Hypo, IdealsOfTheFixture) {
    StructAlgebra p = fixture_hypo();
    EXPECT_TRUE(is_hypo_nilpotent(p, hypo_i1()));
    EXPECT_TRUE(is_hypo_nilpotent(p, hypo_i2()));
    EXPECT_FALSE(is_hypo_nilpotent(p, Subspace::zero(7)));
    Subspace sum = hypo_i1() + hypo_i2();
    EXPECT_TRUE(sum.is_full());
    EXPECT_FALSE(is_hypo_nilpotent(p, sum));
    EXPECT_FALSE(series(p, sum, SeriesKind::Subalgebra).reaches_zero);
    EXPECT_THROW(is_hypo_nilpotent(p, coords(7, {4})), std::invalid_argument);
}

TEST(Operators, AdjointOnHypo) {
    StructAlgebra p = fixture_hypo();
    QMatrix q = adjoint_operator(p, IndexTuple{3, 4, 5});
    // Q_y(v) = [y, v] = [e4, e5, e6, e_i] = -[e_i, e4, e5, e6] = -e_i.
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) {
            EXPECT_EQ(q(i, j), (i == j && i < 3) ? Scalar(-1) : Scalar(0));
        }
    }
    EXPECT_FALSE(is_nilpotent(q));
    QMatrix same = adjoint_operator(p, std::vector<Vector>{e(7, 4), e(7, 5), e(7, 6)});
    EXPECT_EQ(q, same);
}

TEST(Operators, MultiplicationOnHypo) {
    StructAlgebra p = fixture_hypo();
    QMatrix m = multiplication_operator(p, e(7, 4));
    for (std::size_t i = 0; i < 7; ++i) {
        for (std::size_t j = 0; j < 7; ++j) EXPECT_EQ(m(i, j), (i == 6 && j == 4) ? Scalar(1) : Scalar(0));
    }
    EXPECT_FALSE(m.is_zero());
    EXPECT_TRUE((m * m).is_zero());
}

TEST(Operators, EngelMatchesNilpotency) {
    for (const auto& name : fixture_names()) {
        StructAlgebra p = named_fixture(name);
        EXPECT_EQ(engel_check(p).all_nilpotent(), classify(p).nilpotent) << name;
    }
    auto r = engel_check(fixture_hypo());
    EXPECT_TRUE(r.multiplications_nilpotent);
    EXPECT_FALSE(r.adjoints_nilpotent);
}

TEST(Operators, GeneralizedEigenspaceIdentity) {
    // (P_a - l)^k Q_y(x) = Q_y (P_a - l)^k x - k P_{Q_y(a)} (P_a - l)^{k-1} x
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const StructAlgebra& p : {fixture_hypo(), heisenberg_3lie()}) {
        const std::size_t d = p.dim(), n = p.arity();
        auto random_vector = [&] {
            Vector v(d);
            for (auto& c : v) c = coef(rng);
            return v;
        };
        for (int trial = 0; trial < 20; ++trial) {
            Vector a = random_vector(), x = random_vector();
            std::vector<Vector> y;
            for (std::size_t s = 0; s + 1 < n; ++s) y.push_back(random_vector());
            Scalar lambda = coef(rng);
            std::size_t k = 1 + trial % 4;
            QMatrix pa = multiplication_operator(p, a) - QMatrix::identity(d).scaled(lambda);
            QMatrix qy = adjoint_operator(p, y);
            QMatrix pq = multiplication_operator(p, qy.apply(a));
            QMatrix lhs = pa.pow(k) * qy;
            QMatrix rhs = qy * pa.pow(k) - (pq * pa.pow(k - 1)).scaled(Scalar(static_cast<long>(k)));
            EXPECT_EQ(lhs, rhs);
        }
    }
}

TEST(Operators, GeneralizedEigenspacesAreIdeals) {
    StructAlgebra p = fixture_hypo();
    Subspace z = generalized_eigenspace(p, e(7, 4), 0);
    EXPECT_TRUE(z.is_full());  // P_{e4} is nilpotent
    EXPECT_TRUE(is_ideal(p, z));
    EXPECT_TRUE(generalized_eigenspace(p, Vector(7), 0).is_full());
    EXPECT_TRUE(generalized_eigenspace(p, e(7, 4), 2).is_zero());
    StructAlgebra u = poisson_triple();
    Subspace s = generalized_eigenspace(u, e(3, 1), 1);
    EXPECT_TRUE(s.is_full());
    EXPECT_TRUE(is_ideal(u, generalized_eigenspace(u, e(3, 2), 0)));
}

TEST(Solvable, CommonEigenvectorOnHypo) {
    StructAlgebra p = fixture_hypo();
    auto ev = common_eigenvector(p);
    ASSERT_TRUE(ev.has_value());
    EXPECT_EQ(ev->v, e(7, 7));
    for (const auto& l : ev->eigenvalues) EXPECT_EQ(l, 0);
}

TEST(Solvable, CommonEigenvectorPostconditions) {
    for (const StructAlgebra& p : {fixture_hypo(), fixture_torus(), fixture_torus(4, 5), abelian_algebra(3, 2)}) {
        auto ev = common_eigenvector(p);
        ASSERT_TRUE(ev.has_value());
        for (std::size_t i = 0; i < p.dim(); ++i) {
            EXPECT_TRUE(is_zero_vector(p.product(basis_vector(p.dim(), i), ev->v)));
        }
        for (std::size_t t = 0; t < ev->tuples.size(); ++t) {
            Vector image = adjoint_operator(p, ev->tuples[t]).apply(ev->v);
            Vector expect = ev->v;
            for (auto& c : expect) c *= ev->eigenvalues[t];
            EXPECT_EQ(image, expect);
        }
    }
}

TEST(Solvable, TorusEigenvectorLiesInNilradical) {
    StructAlgebra p = fixture_torus();
    auto ev = common_eigenvector(p);
    ASSERT_TRUE(ev.has_value());
    EXPECT_TRUE(nilradical(p).nilradical.contains(ev->v));
    for (const auto& l : ev->eigenvalues) EXPECT_EQ(l.get_den(), 1);
}

TEST(Solvable, RejectsNonSolvable) {
    EXPECT_THROW(common_eigenvector(simple_3lie()), std::invalid_argument);
    EXPECT_THROW(nilradical(simple_3lie()), std::invalid_argument);
}

TEST(Solvable, FlagOfHypo) {
    StructAlgebra p = fixture_hypo();
    auto flag = solvable_flag(p);
    ASSERT_TRUE(flag.has_value());
    ASSERT_EQ(flag->size(), 8u);
    EXPECT_EQ((*flag)[1], coords(7, {7}));
    EXPECT_EQ((*flag)[2], coords(7, {1, 7}));
    for (std::size_t k = 0; k < flag->size(); ++k) {
        EXPECT_EQ((*flag)[k].dim(), k);
        EXPECT_TRUE(is_ideal(p, (*flag)[k]));
        if (k) EXPECT_TRUE((*flag)[k].contains((*flag)[k - 1]));
    }
}

TEST(Solvable, FlagOfSmallAlgebras) {
    EXPECT_THROW(solvable_flag(unital_line(3)), std::invalid_argument);
    auto plane = solvable_flag(lie_plane());
    ASSERT_TRUE(plane.has_value());
    EXPECT_EQ((*plane)[1], Subspace::coordinate(2, IndexTuple{1}));
    auto ab = solvable_flag(abelian_algebra(3, 3));
    ASSERT_TRUE(ab.has_value());
    EXPECT_EQ(ab->back(), Subspace::full(3));
}

TEST(Solvable, NilradicalOfHypo) {
    StructAlgebra p = fixture_hypo();
    auto r = nilradical(p);
    EXPECT_EQ(r.nilradical, coords(7, {1, 2, 3, 7}));
    EXPECT_TRUE(r.agrees);
    for (std::size_t i : {4, 5, 6}) {
        Subspace bigger = ideal_closure(p, r.nilradical + coords(7, {i}));
        EXPECT_FALSE(is_nilpotent_ideal(p, bigger)) << i;
    }
    EXPECT_TRUE(hypo_i1().contains(r.nilradical));
    EXPECT_TRUE(hypo_i2().contains(r.nilradical));
    // 0 != P^2 <= Nil < H <= P
    Subspace all = Subspace::full(7);
    Subspace square = series_step(p, all, all, SeriesKind::LowerCentral);
    EXPECT_FALSE(square.is_zero());
    EXPECT_TRUE(r.nilradical.contains(square));
    EXPECT_TRUE(hypo_i1().contains(r.nilradical));
    EXPECT_LT(r.nilradical.dim(), hypo_i1().dim());
}

TEST(Solvable, NilradicalOfNilpotentIsEverything) {
    EXPECT_TRUE(nilradical(heisenberg_3lie()).nilradical.is_full());
}

TEST(Solvable, TorusNilradical) {
    // Nil = span(e_{n-1}..e_m)
    StructAlgebra p = fixture_torus(4, 5);
    auto r = nilradical(p);
    EXPECT_EQ(r.nilradical, Subspace::coordinate(p.dim(), IndexTuple{2, 3, 4}));
    EXPECT_TRUE(r.agrees);
}

TEST(Solvable, ExtensionWitnesses) {
    StructAlgebra p = fixture_hypo();
    auto r = hypo_extension_witnesses(p, hypo_i1());
    ASSERT_EQ(r.witnesses.size(), 1u);
    EXPECT_EQ(r.witnesses[0].x, e(7, 5));
    ASSERT_TRUE(r.witnesses[0].companions.has_value());
    EXPECT_TRUE(r.all_found);

    StructAlgebra t = fixture_torus();
    Subspace n = Subspace::coordinate(5, IndexTuple{0, 1, 2});
    auto rt = hypo_extension_witnesses(t, n);
    EXPECT_EQ(rt.witnesses.size(), 2u);
    EXPECT_TRUE(rt.all_found);

    // Split abelian setup: nothing to find.
    StructAlgebra a = abelian_algebra(4, 3);
    auto ra = hypo_extension_witnesses(a, coords(4, {1, 2, 3}));
    EXPECT_FALSE(ra.all_found);
}

TEST(Solvable, SquareActionCheck) {
    StructAlgebra t = fixture_torus();
    Vector y = e(5, 4);
    y[4] = 1;  // t_1 + t_2
    auto r = square_action_check(t, y, {e(5, 1)});
    EXPECT_TRUE(r.hypothesis_holds);
    EXPECT_TRUE(r.product_vanishes);
    EXPECT_EQ(r.square, Subspace::coordinate(5, IndexTuple{1, 2}));

    StructAlgebra p = fixture_hypo();
    auto h = square_action_check(p, e(7, 5), {e(7, 4), e(7, 6)});
    EXPECT_EQ(h.square, coords(7, {1, 2, 3, 7}));
    EXPECT_FALSE(h.hypothesis_holds);
    EXPECT_TRUE(h.consistent());

    auto a = square_action_check(abelian_algebra(3, 3), e(3, 1), {e(3, 2)});
    EXPECT_TRUE(a.hypothesis_holds);
    EXPECT_TRUE(a.product_vanishes);
}

TEST(Idempotents, Reports) {
    auto zero = idempotent_report(fixture_hypo(), Vector(7));
    EXPECT_TRUE(zero.idempotent);
    EXPECT_TRUE(zero.central);

    auto line = idempotent_report(unital_line(3), Vector{1});
    EXPECT_TRUE(line.idempotent);
    EXPECT_TRUE(line.central);
    ASSERT_TRUE(line.annihilator_component.has_value());
    EXPECT_TRUE(*line.annihilator_component);

    auto hypo = idempotent_report(fixture_hypo(), e(7, 4));
    EXPECT_FALSE(hypo.idempotent);
    EXPECT_TRUE(hypo.pa_nilpotent);

    auto unit = idempotent_report(poisson_triple(), e(3, 1));
    EXPECT_TRUE(unit.idempotent);
    EXPECT_TRUE(unit.central);
}

TEST(AlgebraIo, RoundTrip) {
    for (const auto& name : fixture_names()) {
        StructAlgebra p = named_fixture(name);
        EXPECT_EQ(parse_algebra(format_algebra(p)), p) << name;
    }
    StructAlgebra g(2, 3, BracketSymmetry::General);
    g.set_bracket(IndexTuple{0, 0, 1}, Vector{make_rational(1, 2), -3});
    EXPECT_EQ(parse_algebra(format_algebra(g)), g);
}

TEST(AlgebraIo, ParsesFormat) {
    StructAlgebra p = parse_algebra(
        "# hypo\n"
        "dim 7\n"
        "arity 4\n"
        "[1,4,5,6] = e1\n"
        "[2,4,5,6] = e2\n"
        "[3,4,5,6] = e3\n"
        "4*5 = e7   # product\n");
    EXPECT_EQ(p, fixture_hypo());
    StructAlgebra q = parse_algebra("dim 3\narity 2\n[1,2] = 2*e1 - 1/3*e3 + e2\n");
    EXPECT_EQ(q.bracket_basis(IndexTuple{0, 1}), (Vector{2, 1, make_rational(-1, 3)}));
}

TEST(AlgebraIo, ErrorsCarryPositions) {
    try {
        parse_algebra("dim 3\narity 2\n[1,4] = e1\n");
        FAIL();
    } catch (const ParseError& err) {
        EXPECT_EQ(err.line(), 3u);
        EXPECT_EQ(err.column(), 4u);
    }
    EXPECT_THROW(parse_algebra("dim 3\narity 2\n[2,1] = e1\n"), ParseError);
    EXPECT_THROW(parse_algebra("dim 3\narity 2\n[1,2] = e1\n[1,2] = e2\n"), ParseError);
    EXPECT_THROW(parse_algebra("[1,2] = e1\n"), ParseError);
    EXPECT_THROW(parse_algebra("dim 3\narity 2\n2*1 = e1\n"), ParseError);
    EXPECT_THROW(parse_algebra("dim 3\narity 2\n1*1 = e4\n"), ParseError);
    EXPECT_THROW(parse_algebra("dim 3\narity 2\n1*1 = e1 junk\n"), ParseError);
    EXPECT_THROW(parse_algebra("dim 3\n"), ParseError);
}
