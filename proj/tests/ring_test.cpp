#include <gtest/gtest.h>

#include <random>

#include "pnlie/derivation.hpp"
#include "pnlie/expr_parser.hpp"
#include "pnlie/laurent.hpp"
#include "pnlie/ring_matrix.hpp"

using namespace pnlie;

namespace {

LaurentPolynomial P(const char* text, std::size_t v = 3) { return parse_polynomial(text, v); }

LaurentPolynomial random_monomial(std::mt19937_64& rng, std::size_t v, int radius = 2) {
    Exponents e(v);
    for (std::size_t i = 0; i < v; ++i) e[i] = static_cast<std::int32_t>(rng() % (2 * radius + 1)) - radius;
    auto c = static_cast<long>(rng() % 9) - 4;
    return LaurentPolynomial::monomial(e, c == 0 ? 1 : c);
}

LaurentPolynomial random_poly(std::mt19937_64& rng, std::size_t v, int terms) {
    LaurentPolynomial p(v);
    for (int i = 0; i < terms; ++i) p += random_monomial(rng, v);
    return p;
}

}  // namespace

TEST(Rational, ParsesAndPrintsLowestTerms) {
    EXPECT_EQ(to_string(parse_rational("6/-4")), "-3/2");
    EXPECT_EQ(to_string(parse_rational("+10/5")), "2");
    EXPECT_THROW(parse_rational("1/0"), std::invalid_argument);
    EXPECT_THROW(parse_rational("x"), std::invalid_argument);
}

TEST(Laurent, CanonicalPrinting) {
    EXPECT_EQ(P("t2^-1*3*t1^2 - 1/2").to_string(), "3*t1^2*t2^-1 - 1/2");
    EXPECT_EQ(P("0").to_string(), "0");
    EXPECT_EQ(P("-(t1)").to_string(), "-t1");
    EXPECT_EQ(P("(t1+t2)^2").to_string(), "t1^2 + 2*t1*t2 + t2^2");
}

TEST(Laurent, EqualityIsStructural) {
    EXPECT_EQ(P("t1*t1^-1"), P("1"));
    EXPECT_EQ(P("(t1 - t2)*(t1 + t2)"), P("t1^2 - t2^2"));
    EXPECT_TRUE(P("t1 - t1").is_zero());
}

TEST(Laurent, RingAxiomsOnRandomInputs) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        auto a = random_poly(rng, 3, 3), b = random_poly(rng, 3, 3), c = random_poly(rng, 3, 2);
        EXPECT_EQ(a * (b + c), a * b + a * c);
        EXPECT_EQ((a * b) * c, a * (b * c));
        EXPECT_EQ(a * b, b * a);
        EXPECT_TRUE((a - a).is_zero());
    }
}

TEST(Laurent, ExponentOverflowIsAnError) {
    Exponents big(1);
    big[0] = std::numeric_limits<std::int32_t>::max();
    auto p = LaurentPolynomial::monomial(big);
    EXPECT_THROW(p * LaurentPolynomial::variable(1, 0), std::overflow_error);
    EXPECT_THROW(p.pow(2), std::overflow_error);
}

TEST(Laurent, NegativePowers) {
    EXPECT_EQ(P("(2*t1)^-2"), P("1/4*t1^-2"));
    EXPECT_THROW(P("t1 + 1").pow(-1), std::domain_error);
}

TEST(Laurent, ExactDivision) {
    auto a = P("t1^-1 + t2"), b = P("t1*t3^2 - 3");
    EXPECT_EQ(exact_divide(a * b, b), a);
    EXPECT_EQ(exact_divide(a * b, a), b);
    EXPECT_THROW(exact_divide(P("t1 + 1"), P("t1 - 1")), std::domain_error);
    EXPECT_THROW(exact_divide(a, P("0")), std::domain_error);
}

TEST(Parser, ReportsPosition) {
    try {
        parse_polynomial("t1 + * t2", 2, 4, 10);
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
        EXPECT_EQ(e.column(), 15u);
    }
    EXPECT_THROW(parse_polynomial("t3", 2), ParseError);
    EXPECT_THROW(parse_polynomial("t1/t2", 2), ParseError);
    EXPECT_THROW(parse_polynomial("(t1+t2)^-1", 2), ParseError);
    EXPECT_THROW(parse_polynomial("(t1", 2), ParseError);
    EXPECT_EQ(parse_polynomial(" 3 / 6 * t1 ^ - 2 ", 2).to_string(), "1/2*t1^-2");
}

TEST(Derivation, EulerMultipliesByExponent) {
    auto d = Derivation::euler(2, 0);
    EXPECT_EQ(d.apply(P("t1^3*t2^-1", 2)), P("3*t1^3*t2^-1", 2));
    EXPECT_EQ(d.apply(P("t1 + t2", 2)), P("t1", 2));
}

TEST(Derivation, KillsConstants) {
    EXPECT_TRUE(Derivation::partial(2, 1).apply(P("5", 2)).is_zero());
    EXPECT_TRUE(Derivation::euler(2, 1).apply(P("5", 2)).is_zero());
}

TEST(Derivation, PartialOfNegativePower) {
    EXPECT_EQ(Derivation::partial(2, 0).apply(P("t1^-2*t2", 2)), P("-2*t1^-3*t2", 2));
}

TEST(Derivation, ProductRuleOnRandomInputs) {
    std::mt19937_64 rng(5);
    std::vector<Derivation> ds{Derivation::partial(3, 0), Derivation::euler(3, 2),
                               Derivation::general({P("t2"), P("t1^-1"), P("0")})};
    for (int trial = 0; trial < 40; ++trial) {
        auto p = random_poly(rng, 3, 3), q = random_poly(rng, 3, 3);
        for (const auto& d : ds) EXPECT_EQ(d.apply(p * q), p * d.apply(q) + q * d.apply(p));
    }
}

TEST(Derivation, CommutatorDefect) {
    auto e1 = Derivation::euler(2, 0), e2 = Derivation::euler(2, 1), p1 = Derivation::partial(2, 0);
    for (const auto& e : commutator_defect(e1, e2)) EXPECT_TRUE(e.is_zero());
    for (const auto& e : commutator_defect(e1, e1)) EXPECT_TRUE(e.is_zero());
    auto defect = commutator_defect(p1, e1);
    EXPECT_EQ(defect[0], P("1", 2));
    EXPECT_TRUE(defect[1].is_zero());
}

TEST(Derivation, CommutatorMatchesActionOnSamples) {
    auto d1 = Derivation::general({P("t2"), P("0"), P("1")});
    auto d2 = Derivation::euler(3, 0);
    auto coeffs = commutator_defect(d1, d2);
    auto bracket = Derivation::general(coeffs);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        auto p = random_poly(rng, 3, 3);
        EXPECT_EQ(d1.apply(d2.apply(p)) - d2.apply(d1.apply(p)), bracket.apply(p));
    }
}

TEST(Derivation, FamilyCertification) {
    EXPECT_NO_THROW(DerivationFamily::euler(4, 4));
    EXPECT_THROW(DerivationFamily::certify({Derivation::partial(2, 0), Derivation::euler(2, 0)}),
                 std::invalid_argument);
    auto fam = DerivationFamily::euler(3, 3);
    for (std::size_t i = 0; i < fam.size(); ++i) {
        for (std::size_t j = 0; j < fam.size(); ++j) {
            for (const auto& e : commutator_defect(fam[i], fam[j])) EXPECT_TRUE(e.is_zero());
        }
    }
}

TEST(Determinant, SmallCases) {
    RingMatrix m(2, 2, 2);
    m(0, 0) = P("t1", 2);
    m(1, 1) = P("t2", 2);
    EXPECT_EQ(det_ring(m), P("t1*t2", 2));
    RingMatrix id(6, 6, 1);
    for (std::size_t i = 0; i < 6; ++i) id(i, i) = LaurentPolynomial::constant(1, 1);
    EXPECT_EQ(det_ring(id), LaurentPolynomial::constant(1, 1));
    EXPECT_EQ(det_ring(id, DetMethod::Laplace), LaurentPolynomial::constant(1, 1));
    EXPECT_EQ(det_ring(RingMatrix(0, 0, 1)), LaurentPolynomial::constant(1, 1));
    EXPECT_THROW(det_ring(RingMatrix(2, 3, 1)), std::invalid_argument);
    EXPECT_THROW(det_ring(RingMatrix(13, 13, 1)), std::invalid_argument);
}

TEST(Determinant, LaplaceAgreesWithBareissOnMonomialMatrices) {
    std::mt19937_64 rng(17);
    for (std::size_t k = 1; k <= 5; ++k) {
        for (int trial = 0; trial < 12; ++trial) {
            RingMatrix m(k, k, 3);
            for (std::size_t r = 0; r < k; ++r) {
                for (std::size_t c = 0; c < k; ++c) {
                    if (rng() % 5 != 0) m(r, c) = random_monomial(rng, 3);
                }
            }
            EXPECT_EQ(det_ring(m, DetMethod::Laplace), det_ring(m, DetMethod::Bareiss)) << "size " << k;
        }
    }
}

TEST(Determinant, RepeatedColumnOrRowGivesZero) {
    std::mt19937_64 rng(23);
    for (std::size_t k = 2; k <= 5; ++k) {
        RingMatrix m(k, k, 2);
        for (std::size_t r = 0; r < k; ++r) {
            for (std::size_t c = 0; c < k; ++c) m(r, c) = random_poly(rng, 2, 2);
        }
        RingMatrix col = m, row = m;
        for (std::size_t r = 0; r < k; ++r) col(r, 1) = col(r, 0);
        for (std::size_t c = 0; c < k; ++c) row(k - 1, c) = row(0, c);
        EXPECT_TRUE(det_ring(col).is_zero());
        EXPECT_TRUE(det_ring(row).is_zero());
        EXPECT_TRUE(det_ring(col, DetMethod::Bareiss).is_zero());
    }
}

TEST(Determinant, MultilinearInAColumn) {
    std::mt19937_64 rng(29);
    RingMatrix m(4, 4, 2);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) m(r, c) = random_poly(rng, 2, 2);
    }
    RingMatrix a = m, b = m;
    for (std::size_t r = 0; r < 4; ++r) {
        b(r, 2) = random_poly(rng, 2, 2);
        m(r, 2) = a(r, 2) * Scalar(3) + b(r, 2);
    }
    EXPECT_EQ(det_ring(m), det_ring(a) * Scalar(3) + det_ring(b));
}
