#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pnlie/jacobian.hpp"

namespace pnlie {

/// A Laurent ring with a named family of commuting derivations:
///
///   laurent:euler          v = n + m, d_i = t_i d/dt_i
///   laurent:v=<k>:euler    k variables, d_i = t_i d/dt_i for i <= n + m
///   laurent:v=<k>:partial  d_i = d/dt_i
///
/// Only the Euler family is flagged as satisfying the criterion's
/// assumptions.
struct RingPreset {
    enum class Family { Euler, Partial };
    /// 0 means "as many variables as derivations".
    std::size_t num_vars = 0;
    Family family = Family::Euler;

    bool assumptions_hold() const { return family == Family::Euler; }
    std::size_t vars_for(std::size_t derivations) const { return num_vars == 0 ? derivations : num_vars; }
    /// Certified family of `count` derivations. Throws std::invalid_argument
    /// when the ring has fewer than `count` variables.
    DerivationFamily derivations(std::size_t count) const;
    std::string name() const;
};

/// Throws std::invalid_argument for an unknown preset.
RingPreset parse_ring_preset(std::string_view text);

/// Sum of 1..max_terms seeded terms c * t^e with |c| <= 5 and exponents in
/// [-radius, radius].
LaurentPolynomial random_laurent_polynomial(std::size_t num_vars, std::uint64_t seed, std::size_t max_terms = 3,
                                            std::int32_t radius = 2);

/// a_{r,c} = d_r(y_c).
AdjoinedMatrix derivative_column_matrix(std::size_t n, const std::vector<LaurentPolynomial>& ys,
                                        const DerivationFamily& ds);
/// f on the top m x m diagonal, zero elsewhere.
AdjoinedMatrix scaled_identity_matrix(std::size_t n, std::size_t m, const LaurentPolynomial& f);
/// One column (t_2, t_3, .., t_{n+1}, t_1): with Euler derivations the
/// fundamental identity fails.
AdjoinedMatrix cyclic_column_matrix(std::size_t n);

/// Adjoined-matrix block:
///
///   ring laurent:v=3:euler     # optional
///   n 2
///   m 1
///   t2                         # n + m rows of m comma-separated entries
///   t3
///   t1
///
/// Entries are read in the block's ring, or in `fallback` when the block
/// names none. With m = 0 there are no rows. Throws ParseError with line and
/// column.
struct MatrixBlock {
    std::optional<RingPreset> ring;
    AdjoinedMatrix matrix;
};
MatrixBlock parse_matrix_block(std::string_view text, const RingPreset& fallback = {});
MatrixBlock read_matrix_block_file(const std::string& path, const RingPreset& fallback = {});
std::string format_matrix_block(const AdjoinedMatrix& a, const std::optional<RingPreset>& ring = std::nullopt);

/// Builds a matrix from a command-line spec:
///
///   scalar:random            seeded random rational constants
///   scalar:<q>,<q>,..        (n+m)*m constants, row-major
///   derivative:random        a_{r,c} = d_r(y_c), seeded y_c
///   derivative:<p>;<p>;..    the same with the given y_c
///   identity-block:random    f * identity block, seeded f
///   identity-block:<p>       the same with the given f
///   cyclic                   cyclic_column_matrix (m must be 1)
///   file:<path>              an adjoined-matrix block
///
/// Returns the block so a file can also set the ring.
MatrixBlock matrix_from_spec(const std::string& spec, std::size_t n, std::size_t m, const RingPreset& ring,
                             std::uint64_t seed);

/// True when the spec draws from the seed.
bool matrix_spec_is_random(const std::string& spec);

}  // namespace pnlie
