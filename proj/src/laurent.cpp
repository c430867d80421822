#include "pnlie/laurent.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace pnlie {

namespace {

std::int32_t checked_exponent(std::int64_t value) {
    if (value > std::numeric_limits<std::int32_t>::max() || value < std::numeric_limits<std::int32_t>::min()) {
        throw std::overflow_error("Laurent exponent overflow");
    }
    return static_cast<std::int32_t>(value);
}

bool term_less(const Term& a, const Term& b) { return grlex_less(a.exponents, b.exponents); }

// Merges two sorted term lists, scaling the second by `factor`.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, const Scalar& factor) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && grlex_less(a[i].exponents, b[j].exponents))) {
            out.push_back(a[i++]);
        } else if (i == a.size() || grlex_less(b[j].exponents, a[i].exponents)) {
            out.push_back({b[j].exponents, b[j].coefficient * factor});
            ++j;
        } else {
            Scalar c = a[i].coefficient + b[j].coefficient * factor;
            if (sgn(c) != 0) out.push_back({a[i].exponents, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace

std::int64_t Exponents::degree() const {
    std::int64_t d = 0;
    for (auto v : e_) d += v;
    return d;
}

Exponents Exponents::operator+(const Exponents& other) const {
    if (e_.size() != other.e_.size()) throw std::invalid_argument("exponent length mismatch");
    Exponents out(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        out.e_[i] = checked_exponent(static_cast<std::int64_t>(e_[i]) + other.e_[i]);
    }
    return out;
}

Exponents Exponents::operator-(const Exponents& other) const {
    if (e_.size() != other.e_.size()) throw std::invalid_argument("exponent length mismatch");
    Exponents out(e_.size());
    for (std::size_t i = 0; i < e_.size(); ++i) {
        out.e_[i] = checked_exponent(static_cast<std::int64_t>(e_[i]) - other.e_[i]);
    }
    return out;
}

bool grlex_less(const Exponents& a, const Exponents& b) {
    auto da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    auto va = a.values(), vb = b.values();
    return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

LaurentPolynomial LaurentPolynomial::constant(std::size_t num_vars, const Scalar& value) {
    LaurentPolynomial p(num_vars);
    if (sgn(value) != 0) p.terms_.push_back({Exponents(num_vars), value});
    return p;
}

LaurentPolynomial LaurentPolynomial::monomial(Exponents exponents, const Scalar& coefficient) {
    LaurentPolynomial p(exponents.size());
    if (sgn(coefficient) != 0) p.terms_.push_back({std::move(exponents), coefficient});
    return p;
}

LaurentPolynomial LaurentPolynomial::variable(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("variable index out of range");
    Exponents e(num_vars);
    e[index] = 1;
    return monomial(std::move(e));
}

LaurentPolynomial LaurentPolynomial::from_terms(std::size_t num_vars, std::vector<Term> terms) {
    LaurentPolynomial p(num_vars);
    for (const auto& t : terms) {
        if (t.exponents.size() != num_vars) throw std::invalid_argument("term has wrong variable count");
    }
    p.terms_ = std::move(terms);
    p.normalize();
    return p;
}

void LaurentPolynomial::normalize() {
    std::stable_sort(terms_.begin(), terms_.end(), term_less);
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().exponents == t.exponents) {
            out.back().coefficient += t.coefficient;
        } else {
            if (!out.empty() && sgn(out.back().coefficient) == 0) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && sgn(out.back().coefficient) == 0) out.pop_back();
    terms_ = std::move(out);
}

void LaurentPolynomial::check_compatible(const LaurentPolynomial& other) const {
    if (num_vars_ != other.num_vars_) {
        throw std::invalid_argument("variable count mismatch: " + std::to_string(num_vars_) + " vs " +
                                    std::to_string(other.num_vars_));
    }
}

bool LaurentPolynomial::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    for (auto v : terms_[0].exponents.values()) {
        if (v != 0) return false;
    }
    return true;
}

Scalar LaurentPolynomial::constant_value() const {
    if (terms_.empty()) return 0;
    return terms_.front().coefficient;
}

LaurentPolynomial LaurentPolynomial::operator-() const {
    LaurentPolynomial out = *this;
    for (auto& t : out.terms_) t.coefficient = -t.coefficient;
    return out;
}

LaurentPolynomial& LaurentPolynomial::operator+=(const LaurentPolynomial& other) {
    add_scaled(other, Scalar(1));
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator-=(const LaurentPolynomial& other) {
    add_scaled(other, Scalar(-1));
    return *this;
}

void LaurentPolynomial::add_scaled(const LaurentPolynomial& other, const Scalar& coefficient) {
    check_compatible(other);
    if (other.terms_.empty() || sgn(coefficient) == 0) return;
    terms_ = merge_terms(terms_, other.terms_, coefficient);
}

LaurentPolynomial& LaurentPolynomial::operator*=(const Scalar& factor) {
    if (sgn(factor) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& t : terms_) t.coefficient *= factor;
    return *this;
}

LaurentPolynomial& LaurentPolynomial::operator*=(const LaurentPolynomial& other) {
    *this = *this * other;
    return *this;
}

LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    a.check_compatible(b);
    LaurentPolynomial out(a.num_vars_);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    out.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (const auto& x : a.terms_) {
        for (const auto& y : b.terms_) {
            out.terms_.push_back({x.exponents + y.exponents, x.coefficient * y.coefficient});
        }
    }
    out.normalize();
    return out;
}

LaurentPolynomial LaurentPolynomial::pow(std::int64_t exponent) const {
    if (exponent < 0) {
        if (!is_monomial()) throw std::domain_error("negative power of a non-monomial");
        const auto& t = terms_[0];
        Exponents e(num_vars_);
        for (std::size_t i = 0; i < num_vars_; ++i) e[i] = checked_exponent(-static_cast<std::int64_t>(t.exponents[i]));
        Scalar c = 1 / t.coefficient;
        return monomial(std::move(e), c).pow(-exponent);
    }
    LaurentPolynomial result = constant(num_vars_, 1);
    LaurentPolynomial base = *this;
    while (exponent > 0) {
        if (exponent & 1) result *= base;
        exponent >>= 1;
        if (exponent > 0) base = base * base;
    }
    return result;
}

bool LaurentPolynomial::operator==(const LaurentPolynomial& other) const {
    if (num_vars_ != other.num_vars_ || terms_.size() != other.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (terms_[i].exponents != other.terms_[i].exponents || terms_[i].coefficient != other.terms_[i].coefficient) {
            return false;
        }
    }
    return true;
}

std::string LaurentPolynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Scalar& c = it->coefficient;
        bool negative = sgn(c) < 0;
        Scalar magnitude = negative ? Scalar(-c) : c;
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        std::string mono;
        for (std::size_t i = 0; i < num_vars_; ++i) {
            auto e = it->exponents[i];
            if (e == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "t" + std::to_string(i + 1);
            if (e != 1) mono += "^" + std::to_string(e);
        }
        if (mono.empty()) {
            out += pnlie::to_string(magnitude);
        } else if (magnitude == 1) {
            out += mono;
        } else {
            out += pnlie::to_string(magnitude) + "*" + mono;
        }
    }
    return out;
}

namespace {

// Splits p = t^shift * q with q having minimum exponent zero in every variable.
Exponents monomial_content(const LaurentPolynomial& p) {
    Exponents lo(p.num_vars());
    bool first = true;
    for (const auto& t : p.terms()) {
        for (std::size_t i = 0; i < p.num_vars(); ++i) {
            if (first || t.exponents[i] < lo[i]) lo[i] = t.exponents[i];
        }
        first = false;
    }
    return lo;
}

LaurentPolynomial shift(const LaurentPolynomial& p, const Exponents& by, bool subtract) {
    std::vector<Term> terms;
    terms.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        terms.push_back({subtract ? t.exponents - by : t.exponents + by, t.coefficient});
    }
    return LaurentPolynomial::from_terms(p.num_vars(), std::move(terms));
}

}  // namespace

LaurentPolynomial exact_divide(const LaurentPolynomial& a, const LaurentPolynomial& b) {
    if (a.num_vars() != b.num_vars()) throw std::invalid_argument("variable count mismatch");
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    if (a.is_zero()) return a;
    Exponents ca = monomial_content(a), cb = monomial_content(b);
    LaurentPolynomial r = shift(a, ca, true);
    LaurentPolynomial d = shift(b, cb, true);
    // Both are now monomial-free polynomials, so any exact quotient is a polynomial.
    const Term& lead = d.terms().back();
    std::vector<Term> quotient;
    while (!r.is_zero()) {
        const Term& lr = r.terms().back();
        Exponents e = lr.exponents - lead.exponents;
        for (auto v : e.values()) {
            if (v < 0) throw std::domain_error("polynomial is not divisible");
        }
        Scalar c = lr.coefficient / lead.coefficient;
        LaurentPolynomial step = LaurentPolynomial::monomial(e, c) * d;
        r -= step;
        quotient.push_back({std::move(e), std::move(c)});
    }
    LaurentPolynomial q = LaurentPolynomial::from_terms(a.num_vars(), std::move(quotient));
    return shift(q, ca - cb, false);
}

}  // namespace pnlie
