#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pnlie/combinatorics.hpp"
#include "pnlie/linalg.hpp"
#include "pnlie/scalar.hpp"

namespace pnlie {

/// (index, coefficient) pairs sorted by index, no zero coefficients.
using SparseVector = std::vector<std::pair<std::size_t, Scalar>>;

SparseVector to_sparse(const Vector& v);
Vector to_dense(const SparseVector& v, std::size_t dim);
Vector basis_vector(std::size_t dim, std::size_t i);

/// "e1 - 1/2*e3", one-based; "0" for the zero vector.
std::string vector_expression(const Vector& v);

enum class BracketSymmetry { Alternating, General };

/// Finite-dimensional algebra given by structure constants: an n-ary bracket
/// and a commutative binary product on the basis e_0..e_{d-1}.
///
/// Alternating brackets are stored on strictly increasing index tuples only.
/// General brackets (iterated brackets, Leibniz algebras) store every tuple.
class StructAlgebra {
public:
    using Table = std::map<std::uint64_t, SparseVector>;

    StructAlgebra() = default;
    StructAlgebra(std::size_t dim, std::size_t arity, BracketSymmetry symmetry = BracketSymmetry::Alternating);

    std::size_t dim() const { return dim_; }
    std::size_t arity() const { return arity_; }
    BracketSymmetry symmetry() const { return symmetry_; }
    bool alternating() const { return symmetry_ == BracketSymmetry::Alternating; }

    /// Alternating: any order of distinct indices, stored sorted with the sign
    /// of the sorting permutation. A repeated index requires a zero value.
    void set_bracket(std::span<const std::size_t> idx, const Vector& value);
    void set_product(std::size_t i, std::size_t j, const Vector& value);

    Vector bracket_basis(std::span<const std::size_t> idx) const;
    /// out += c * [e_idx]
    void add_bracket_basis(std::span<const std::size_t> idx, const Scalar& c, Vector& out) const;
    Vector product_basis(std::size_t i, std::size_t j) const;
    void add_product_basis(std::size_t i, std::size_t j, const Scalar& c, Vector& out) const;

    /// Multilinear evaluation on dense arguments.
    Vector bracket(const std::vector<Vector>& args) const;
    Vector product(const Vector& a, const Vector& b) const;

    const Table& bracket_table() const { return brackets_; }
    const Table& product_table() const { return products_; }
    IndexTuple decode_bracket_key(std::uint64_t key) const;
    std::pair<std::size_t, std::size_t> decode_product_key(std::uint64_t key) const;

    bool bracket_is_zero() const { return brackets_.empty(); }
    bool product_is_zero() const { return products_.empty(); }

    StructAlgebra with_zero_product() const;
    StructAlgebra with_zero_bracket() const;
    /// Re-stores a General bracket as Alternating; throws std::domain_error
    /// when the bracket is not antisymmetric.
    StructAlgebra to_alternating() const;

    bool operator==(const StructAlgebra& other) const = default;

private:
    std::uint64_t key_of(std::span<const std::size_t> idx) const;
    // Returns the stored entry for the tuple and the sign to apply, or null.
    const SparseVector* lookup(std::span<const std::size_t> idx, int& sign) const;

    std::size_t dim_ = 0, arity_ = 0;
    BracketSymmetry symmetry_ = BracketSymmetry::Alternating;
    Table brackets_, products_;
};

/// Subspace of F^d held as a reduced row-echelon basis, so equal subspaces
/// compare equal.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }
    static Subspace full(std::size_t ambient);
    static Subspace span(std::size_t ambient, const std::vector<Vector>& vectors);
    static Subspace coordinate(std::size_t ambient, const IndexTuple& indices);

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return rows_.size(); }
    const std::vector<Vector>& basis() const { return rows_; }
    const IndexTuple& pivots() const { return pivots_; }
    bool is_zero() const { return rows_.empty(); }
    bool is_full() const { return rows_.size() == ambient_; }

    /// Remainder of v after eliminating the pivot coordinates.
    Vector reduce(Vector v) const;
    bool contains(const Vector& v) const;
    bool contains(const Subspace& other) const;
    /// Coordinates of v in basis(); v must lie in the subspace.
    Vector coordinates(const Vector& v) const;
    /// Standard basis indices that are not pivots, ascending.
    IndexTuple complement_indices() const;

    Subspace operator+(const Subspace& other) const;
    Subspace intersect(const Subspace& other) const;
    bool operator==(const Subspace& other) const = default;

    /// "span(e1, e2 + e3)" or "0".
    std::string to_string() const;

private:
    friend class SpanBuilder;
    std::size_t ambient_ = 0;
    std::vector<Vector> rows_;
    IndexTuple pivots_;
};

/// Incremental RREF accumulator.
class SpanBuilder {
public:
    explicit SpanBuilder(std::size_t ambient) : space_(ambient) {}
    explicit SpanBuilder(Subspace start) : space_(std::move(start)) {}

    /// Returns true when v enlarged the span.
    bool add(Vector v);
    bool full() const { return space_.is_full(); }
    std::size_t dim() const { return space_.dim(); }
    bool contains(const Vector& v) const { return space_.contains(v); }
    const Subspace& current() const { return space_; }
    Subspace build() && { return std::move(space_); }

private:
    Subspace space_;
};

}  // namespace pnlie
