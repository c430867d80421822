#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "pnlie/scalar.hpp"

namespace pnlie {

/// Exponent vector of a Laurent monomial. Arithmetic is checked: an exponent
/// leaving the int32 range raises std::overflow_error.
class Exponents {
public:
    Exponents() = default;
    explicit Exponents(std::size_t num_vars) : e_(num_vars, 0) {}
    Exponents(std::initializer_list<std::int32_t> values) : e_(values) {}
    explicit Exponents(std::vector<std::int32_t> values) : e_(std::move(values)) {}

    std::size_t size() const { return e_.size(); }
    std::int32_t operator[](std::size_t i) const { return e_[i]; }
    std::int32_t& operator[](std::size_t i) { return e_[i]; }
    std::span<const std::int32_t> values() const { return e_; }

    /// Sum of exponents, computed in 64 bits.
    std::int64_t degree() const;

    Exponents operator+(const Exponents& other) const;
    Exponents operator-(const Exponents& other) const;

    bool operator==(const Exponents&) const = default;

private:
    std::vector<std::int32_t> e_;
};

/// Graded lexicographic order: total degree first, then lexicographic.
bool grlex_less(const Exponents& a, const Exponents& b);

struct Term {
    Exponents exponents;
    Scalar coefficient;
};

/// Sparse multivariate Laurent polynomial over the rationals in a fixed
/// number of variables t_1..t_v. Terms are kept sorted ascending in grlex
/// order with no zero coefficients, so equality is structural.
class LaurentPolynomial {
public:
    LaurentPolynomial() = default;
    explicit LaurentPolynomial(std::size_t num_vars) : num_vars_(num_vars) {}

    static LaurentPolynomial constant(std::size_t num_vars, const Scalar& value);
    static LaurentPolynomial monomial(Exponents exponents, const Scalar& coefficient = 1);
    /// t_{index+1}, i.e. the variable with zero-based position `index`.
    static LaurentPolynomial variable(std::size_t num_vars, std::size_t index);
    /// Takes unsorted, possibly repeated terms and normalizes them.
    static LaurentPolynomial from_terms(std::size_t num_vars, std::vector<Term> terms);

    std::size_t num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant coefficient; only meaningful when is_constant().
    Scalar constant_value() const;
    bool is_monomial() const { return terms_.size() == 1; }

    LaurentPolynomial operator-() const;
    LaurentPolynomial& operator+=(const LaurentPolynomial& other);
    LaurentPolynomial& operator-=(const LaurentPolynomial& other);
    LaurentPolynomial& operator*=(const LaurentPolynomial& other);
    LaurentPolynomial& operator*=(const Scalar& factor);

    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) { return a += b; }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) { return a -= b; }
    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b);
    friend LaurentPolynomial operator*(LaurentPolynomial a, const Scalar& s) { return a *= s; }
    friend LaurentPolynomial operator*(const Scalar& s, LaurentPolynomial a) { return a *= s; }

    /// Nonnegative powers of anything; negative powers only of monomials.
    LaurentPolynomial pow(std::int64_t exponent) const;

    /// this += coefficient * other, in one merge pass.
    void add_scaled(const LaurentPolynomial& other, const Scalar& coefficient);

    bool operator==(const LaurentPolynomial& other) const;

    /// Canonical text: terms from highest to lowest grlex, e.g. "3*t1^2*t2^-1 - 1/2".
    std::string to_string() const;

private:
    void check_compatible(const LaurentPolynomial& other) const;
    void normalize();

    std::size_t num_vars_ = 0;
    std::vector<Term> terms_;
};

/// Exact quotient a / b in the Laurent ring. Throws std::domain_error when b
/// does not divide a (or b is zero).
LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& b);

}  // namespace pnlie
