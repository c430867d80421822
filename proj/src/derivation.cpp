#include "pnlie/derivation.hpp"

#include <limits>
#include <stdexcept>

namespace pnlie {

Derivation Derivation::partial(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("derivation index out of range");
    return Derivation(Kind::Partial, num_vars, index);
}

Derivation Derivation::euler(std::size_t num_vars, std::size_t index) {
    if (index >= num_vars) throw std::out_of_range("derivation index out of range");
    return Derivation(Kind::Euler, num_vars, index);
}

Derivation Derivation::general(std::vector<LaurentPolynomial> coefficients) {
    std::size_t v = coefficients.size();
    for (const auto& c : coefficients) {
        if (c.num_vars() != v) throw std::invalid_argument("derivation coefficient has wrong variable count");
    }
    Derivation d(Kind::General, v, 0);
    d.general_ = std::move(coefficients);
    return d;
}

std::vector<LaurentPolynomial> Derivation::coefficients() const {
    if (kind_ == Kind::General) return general_;
    std::vector<LaurentPolynomial> c(num_vars_, LaurentPolynomial(num_vars_));
    c[index_] = kind_ == Kind::Partial ? LaurentPolynomial::constant(num_vars_, 1)
                                       : LaurentPolynomial::variable(num_vars_, index_);
    return c;
}

namespace {

LaurentPolynomial partial_of(const LaurentPolynomial& p, std::size_t index) {
    std::vector<Term> out;
    out.reserve(p.term_count());
    for (const auto& t : p.terms()) {
        auto e = t.exponents[index];
        if (e == 0) continue;
        if (e == std::numeric_limits<std::int32_t>::min()) throw std::overflow_error("Laurent exponent overflow");
        Exponents shifted = t.exponents;
        shifted[index] = e - 1;
        out.push_back({std::move(shifted), t.coefficient * e});
    }
    return LaurentPolynomial::from_terms(p.num_vars(), std::move(out));
}

}  // namespace

LaurentPolynomial Derivation::apply(const LaurentPolynomial& p) const {
    if (p.num_vars() != num_vars_) throw std::invalid_argument("derivation and polynomial differ in variable count");
    switch (kind_) {
        case Kind::Partial:
            return partial_of(p, index_);
        case Kind::Euler: {
            std::vector<Term> out;
            out.reserve(p.term_count());
            for (const auto& t : p.terms()) {
                auto e = t.exponents[index_];
                if (e != 0) out.push_back({t.exponents, t.coefficient * e});
            }
            return LaurentPolynomial::from_terms(num_vars_, std::move(out));
        }
        case Kind::General: {
            LaurentPolynomial out(num_vars_);
            for (std::size_t j = 0; j < num_vars_; ++j) {
                if (general_[j].is_zero()) continue;
                out += general_[j] * partial_of(p, j);
            }
            return out;
        }
    }
    return LaurentPolynomial(num_vars_);
}

std::string Derivation::describe() const {
    switch (kind_) {
        case Kind::Partial:
            return "partial(" + std::to_string(index_ + 1) + ")";
        case Kind::Euler:
            return "euler(" + std::to_string(index_ + 1) + ")";
        case Kind::General: {
            std::string s = "general(";
            for (std::size_t j = 0; j < general_.size(); ++j) {
                if (j) s += "; ";
                s += general_[j].to_string();
            }
            return s + ")";
        }
    }
    return "?";
}

std::vector<LaurentPolynomial> commutator_defect(const Derivation& d1, const Derivation& d2) {
    if (d1.num_vars() != d2.num_vars()) throw std::invalid_argument("derivations differ in variable count");
    auto c1 = d1.coefficients();
    auto c2 = d2.coefficients();
    std::vector<LaurentPolynomial> e;
    e.reserve(c1.size());
    for (std::size_t j = 0; j < c1.size(); ++j) e.push_back(d1.apply(c2[j]) - d2.apply(c1[j]));
    return e;
}

std::optional<std::pair<std::size_t, std::size_t>> DerivationFamily::find_noncommuting(
    const std::vector<Derivation>& members) {
    for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            for (const auto& e : commutator_defect(members[i], members[j])) {
                if (!e.is_zero()) return std::make_pair(i, j);
            }
        }
    }
    return std::nullopt;
}

DerivationFamily DerivationFamily::certify(std::vector<Derivation> members) {
    for (std::size_t i = 1; i < members.size(); ++i) {
        if (members[i].num_vars() != members[0].num_vars()) {
            throw std::invalid_argument("derivation family mixes variable counts");
        }
    }
    if (auto bad = find_noncommuting(members)) {
        throw std::invalid_argument("derivations d" + std::to_string(bad->first + 1) + " and d" +
                                    std::to_string(bad->second + 1) + " do not commute");
    }
    DerivationFamily f;
    f.members_ = std::move(members);
    f.certified_ = true;
    return f;
}

DerivationFamily DerivationFamily::euler(std::size_t num_vars, std::size_t count) {
    std::vector<Derivation> ds;
    for (std::size_t i = 0; i < count; ++i) ds.push_back(Derivation::euler(num_vars, i));
    return certify(std::move(ds));
}

DerivationFamily DerivationFamily::partial(std::size_t num_vars, std::size_t count) {
    std::vector<Derivation> ds;
    for (std::size_t i = 0; i < count; ++i) ds.push_back(Derivation::partial(num_vars, i));
    return certify(std::move(ds));
}

}  // namespace pnlie
