#include "pnlie/expr_parser.hpp"

#include <cctype>
#include <cstdint>
#include <limits>

namespace pnlie {

namespace {

class Parser {
public:
    Parser(std::string_view text, std::size_t num_vars, std::size_t line, std::size_t column)
        : s_(text), v_(num_vars), line_(line), col0_(column) {}

    LaurentPolynomial parse() {
        LaurentPolynomial p = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col0_ + pos_); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    mpz_class digits() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return mpz_class(std::string(s_.substr(start, pos_ - start)));
    }

    LaurentPolynomial expr() {
        LaurentPolynomial acc = term();
        for (;;) {
            if (accept('+')) {
                acc += term();
            } else if (accept('-')) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    LaurentPolynomial term() {
        LaurentPolynomial acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                LaurentPolynomial d = unary();
                if (!d.is_constant() || d.is_zero()) {
                    pos_ = at;
                    fail("division only by a nonzero constant");
                }
                acc *= Scalar(1 / d.constant_value());
            } else {
                return acc;
            }
        }
    }

    LaurentPolynomial unary() {
        if (accept('-')) return -unary();
        if (accept('+')) return unary();
        return power();
    }

    LaurentPolynomial power() {
        LaurentPolynomial base = atom();
        if (!accept('^')) return base;
        bool negative = false;
        if (accept('-')) {
            negative = true;
        } else {
            accept('+');
        }
        std::size_t at = pos_;
        mpz_class e = digits();
        if (e > std::numeric_limits<std::int32_t>::max()) {
            pos_ = at;
            fail("exponent out of range");
        }
        std::int64_t k = e.get_si();
        if (negative) k = -k;
        if (k < 0 && !base.is_monomial()) {
            pos_ = at;
            fail("negative power of a non-monomial");
        }
        try {
            return base.pow(k);
        } catch (const std::overflow_error&) {
            pos_ = at;
            fail("exponent overflow");
        }
    }

    LaurentPolynomial atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of expression");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            LaurentPolynomial inner = expr();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (c == 't') {
            std::size_t at = pos_;
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("expected variable index");
            mpz_class idx = digits();
            if (idx < 1 || idx > static_cast<unsigned long>(v_)) {
                pos_ = at;
                fail("variable t" + idx.get_str() + " outside t1..t" + std::to_string(v_));
            }
            return LaurentPolynomial::variable(v_, idx.get_ui() - 1);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return LaurentPolynomial::constant(v_, Scalar(digits()));
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view s_;
    std::size_t v_;
    std::size_t line_;
    std::size_t col0_;
    std::size_t pos_ = 0;
};

}  // namespace

LaurentPolynomial parse_polynomial(std::string_view text, std::size_t num_vars, std::size_t line, std::size_t column) {
    return Parser(text, num_vars, line, column).parse();
}

}  // namespace pnlie
