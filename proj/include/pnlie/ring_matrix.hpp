#pragma once

#include <cstddef>
#include <vector>

#include "pnlie/laurent.hpp"

namespace pnlie {

/// Dense rows x cols matrix of Laurent polynomials in a common ring.
class RingMatrix {
public:
    RingMatrix() = default;
    RingMatrix(std::size_t rows, std::size_t cols, std::size_t num_vars)
        : rows_(rows), cols_(cols), num_vars_(num_vars), entries_(rows * cols, LaurentPolynomial(num_vars)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t num_vars() const { return num_vars_; }

    const LaurentPolynomial& operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    LaurentPolynomial& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }

    bool is_scalar() const;

    /// Submatrix on the given rows and columns (in the order given).
    RingMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t num_vars_ = 0;
    std::vector<LaurentPolynomial> entries_;
};

enum class DetMethod { Auto, Laplace, Bareiss };

inline constexpr std::size_t kDefaultDetCap = 12;
inline constexpr std::size_t kLaplaceMaxSize = 4;

/// Exact determinant. Auto uses Laplace expansion up to size 4 and
/// fraction-free elimination above. A 0x0 matrix has determinant 1.
/// Throws std::invalid_argument if M is not square or exceeds `cap`.
LaurentPolynomial det_ring(const RingMatrix& m, DetMethod method = DetMethod::Auto, std::size_t cap = kDefaultDetCap);

}  // namespace pnlie
