#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnlie/scalar.hpp"

namespace pnlie {

using Vector = std::vector<Scalar>;

/// Dense rational matrix, row-major.
class QMatrix {
public:
    QMatrix() = default;
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    static QMatrix identity(std::size_t k);
    static QMatrix from_rows(const std::vector<Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Scalar& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Scalar& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    Vector row(std::size_t r) const;
    Vector column(std::size_t c) const;
    Vector apply(const Vector& x) const;
    QMatrix transpose() const;
    bool is_zero() const;

    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator+(const QMatrix& a, const QMatrix& b);
    friend QMatrix operator-(const QMatrix& a, const QMatrix& b);
    QMatrix scaled(const Scalar& s) const;
    QMatrix pow(std::size_t k) const;
    bool operator==(const QMatrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Scalar> data_;
};

struct Echelon {
    QMatrix matrix;                   // reduced row-echelon form, zero rows dropped
    std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon rref(QMatrix m);
std::size_t rank(const QMatrix& m);
Scalar determinant(QMatrix m);
/// Inverse of a square matrix; nullopt when singular.
std::optional<QMatrix> inverse(const QMatrix& m);
/// Basis of {x : M x = 0}, one vector per free column.
std::vector<Vector> nullspace(const QMatrix& m);
bool is_nilpotent(const QMatrix& m);

/// Characteristic polynomial det(x I - M), coefficients low to high, monic.
std::vector<Scalar> charpoly(const QMatrix& m);
/// Distinct rational roots of a polynomial (coefficients low to high), ascending.
std::vector<Scalar> rational_roots(const std::vector<Scalar>& coefficients);

bool is_zero_vector(const Vector& v);
std::string vector_to_string(const Vector& v);

}  // namespace pnlie
