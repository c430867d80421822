#include "pnlie/ring_matrix.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <utility>

namespace pnlie {

bool RingMatrix::is_scalar() const {
    for (const auto& e : entries_) {
        if (!e.is_constant()) return false;
    }
    return true;
}

RingMatrix RingMatrix::select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const {
    RingMatrix out(rows.size(), cols.size(), num_vars_);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    }
    return out;
}

namespace {

// Column-by-column Laplace expansion memoized over row subsets: minor[S] is
// the determinant of rows S against the first |S| columns.
LaurentPolynomial det_laplace(const RingMatrix& m) {
    const std::size_t k = m.rows();
    const std::size_t v = m.num_vars();
    std::vector<LaurentPolynomial> minor(std::size_t{1} << k, LaurentPolynomial(v));
    minor[0] = LaurentPolynomial::constant(v, 1);
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        const std::size_t c = static_cast<std::size_t>(std::popcount(mask)) - 1;
        LaurentPolynomial acc(v);
        for (std::size_t r = 0; r < k; ++r) {
            if (!(mask & (1u << r))) continue;
            const auto& rest = minor[mask & ~(1u << r)];
            if (rest.is_zero() || m(r, c).is_zero()) continue;
            const int above = std::popcount(mask >> (r + 1));
            LaurentPolynomial term = m(r, c) * rest;
            if (above % 2) {
                acc -= term;
            } else {
                acc += term;
            }
        }
        minor[mask] = std::move(acc);
    }
    return minor.back();
}

LaurentPolynomial det_bareiss(RingMatrix a) {
    const std::size_t k = a.rows();
    const std::size_t v = a.num_vars();
    LaurentPolynomial prev = LaurentPolynomial::constant(v, 1);
    bool negate = false;
    for (std::size_t p = 0; p < k; ++p) {
        if (a(p, p).is_zero()) {
            std::size_t swap_row = p + 1;
            while (swap_row < k && a(swap_row, p).is_zero()) ++swap_row;
            if (swap_row == k) return LaurentPolynomial(v);
            for (std::size_t c = 0; c < k; ++c) std::swap(a(p, c), a(swap_row, c));
            negate = !negate;
        }
        for (std::size_t i = p + 1; i < k; ++i) {
            for (std::size_t j = p + 1; j < k; ++j) {
                LaurentPolynomial num = a(p, p) * a(i, j) - a(i, p) * a(p, j);
                a(i, j) = exact_divide(num, prev);
            }
            a(i, p) = LaurentPolynomial(v);
        }
        prev = a(p, p);
    }
    LaurentPolynomial d = k == 0 ? LaurentPolynomial::constant(v, 1) : a(k - 1, k - 1);
    return negate ? -d : d;
}

}  // namespace

LaurentPolynomial det_ring(const RingMatrix& m, DetMethod method, std::size_t cap) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    if (m.rows() > cap) throw std::invalid_argument("matrix size exceeds determinant cap");
    if (m.rows() == 0) return LaurentPolynomial::constant(m.num_vars(), 1);
    if (method == DetMethod::Auto) method = m.rows() <= kLaplaceMaxSize ? DetMethod::Laplace : DetMethod::Bareiss;
    return method == DetMethod::Laplace ? det_laplace(m) : det_bareiss(m);
}

}  // namespace pnlie
