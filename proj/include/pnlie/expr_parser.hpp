#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "pnlie/laurent.hpp"

namespace pnlie {

/// Parse failure carrying a 1-based source position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& message, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

/// Parses a Laurent polynomial in t1..t{num_vars}:
///   expr  := term (('+' | '-') term)*
///   term  := unary (('*' | '/') unary)*
///   unary := ('+' | '-') unary | power
///   power := atom ('^' ['+' | '-'] integer)?
///   atom  := integer | 't' integer | '(' expr ')'
/// Division is allowed only by nonzero constants; negative powers only of
/// monomials. `line` and `column` locate the text inside a larger file.
LaurentPolynomial parse_polynomial(std::string_view text, std::size_t num_vars, std::size_t line = 1,
                                   std::size_t column = 1);

}  // namespace pnlie
