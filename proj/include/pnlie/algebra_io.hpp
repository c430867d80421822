#pragma once

#include <string>
#include <string_view>

#include "pnlie/algebra.hpp"

namespace pnlie {

/// Reads the algebra definition format:
///
///   dim 7
///   arity 4
///   symmetry general          # optional, default alternating
///   [1,4,5,6] = e1            # bracket entry, one-based indices
///   4*5 = e7                  # product entry, i <= j
///   [2,3,4,5] = 1/2*e1 - e3
///
/// Alternating brackets list strictly increasing tuples. Unlisted entries are
/// zero; listing an entry twice is an error. Throws ParseError with the line
/// and column of the problem.
StructAlgebra parse_algebra(std::string_view text);
StructAlgebra read_algebra_file(const std::string& path);

/// "e1 - 1/2*e3" or "0" in a dim-dimensional space, one-based indices.
Vector parse_vector_expression(std::string_view text, std::size_t dim);

/// Inverse of parse_algebra; entries in key order.
std::string format_algebra(const StructAlgebra& p);

}  // namespace pnlie
