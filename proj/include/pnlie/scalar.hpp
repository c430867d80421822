#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace pnlie {

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
using Scalar = mpq_class;

inline Scalar make_rational(std::int64_t numerator, std::int64_t denominator = 1) {
    Scalar q{mpz_class{static_cast<long>(numerator)}, mpz_class{static_cast<long>(denominator)}};
    q.canonicalize();
    return q;
}

/// Parses "p" or "p/q" (optional sign). Throws std::invalid_argument.
Scalar parse_rational(std::string_view text);

/// "p" when the denominator is one, "p/q" otherwise.
std::string to_string(const Scalar& value);

inline bool is_zero(const Scalar& value) { return sgn(value) == 0; }

}  // namespace pnlie
