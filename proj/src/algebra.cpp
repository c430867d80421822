#include "pnlie/algebra.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace pnlie {

SparseVector to_sparse(const Vector& v) {
    SparseVector out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!is_zero(v[i])) out.emplace_back(i, v[i]);
    }
    return out;
}

Vector to_dense(const SparseVector& v, std::size_t dim) {
    Vector out(dim);
    for (const auto& [i, c] : v) out.at(i) = c;
    return out;
}

Vector basis_vector(std::size_t dim, std::size_t i) {
    Vector out(dim);
    out.at(i) = 1;
    return out;
}

std::string vector_expression(const Vector& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (is_zero(v[i])) continue;
        Scalar c = v[i];
        if (s.empty()) {
            if (sgn(c) < 0) s += "-";
        } else {
            s += sgn(c) < 0 ? " - " : " + ";
        }
        c = abs(c);
        if (c != 1) s += to_string(c) + "*";
        s += "e" + std::to_string(i + 1);
    }
    return s.empty() ? "0" : s;
}

StructAlgebra::StructAlgebra(std::size_t dim, std::size_t arity, BracketSymmetry symmetry)
    : dim_(dim), arity_(arity), symmetry_(symmetry) {
    if (arity == 0) throw std::invalid_argument("arity must be positive");
    // Keys are base-d numbers with arity digits.
    long double capacity = 1;
    for (std::size_t k = 0; k < arity; ++k) capacity *= static_cast<long double>(std::max<std::size_t>(dim, 1));
    if (capacity > static_cast<long double>(std::numeric_limits<std::uint64_t>::max() / 2)) {
        throw std::invalid_argument("dim^arity too large for structure-constant keys");
    }
}

std::uint64_t StructAlgebra::key_of(std::span<const std::size_t> idx) const {
    std::uint64_t key = 0;
    for (std::size_t i : idx) key = key * dim_ + i;
    return key;
}

IndexTuple StructAlgebra::decode_bracket_key(std::uint64_t key) const {
    IndexTuple idx(arity_);
    for (std::size_t k = arity_; k-- > 0;) {
        idx[k] = key % dim_;
        key /= dim_;
    }
    return idx;
}

std::pair<std::size_t, std::size_t> StructAlgebra::decode_product_key(std::uint64_t key) const {
    return {key / dim_, key % dim_};
}

namespace {

// Sorts a small index array in place; returns the permutation sign, or 0 on a repeat.
int sort_with_sign(std::size_t* a, std::size_t n) {
    int sign = 1;
    for (std::size_t i = 1; i < n; ++i) {
        for (std::size_t j = i; j > 0 && a[j - 1] >= a[j]; --j) {
            if (a[j - 1] == a[j]) return 0;
            std::swap(a[j - 1], a[j]);
            sign = -sign;
        }
    }
    return sign;
}

void check_vector(const Vector& v, std::size_t dim) {
    if (v.size() != dim) throw std::invalid_argument("vector length does not match algebra dimension");
}

}  // namespace

const SparseVector* StructAlgebra::lookup(std::span<const std::size_t> idx, int& sign) const {
    if (symmetry_ == BracketSymmetry::General) {
        sign = 1;
        auto it = brackets_.find(key_of(idx));
        return it == brackets_.end() ? nullptr : &it->second;
    }
    std::size_t buf[64];
    if (idx.size() > 64) throw std::invalid_argument("arity too large");
    std::copy(idx.begin(), idx.end(), buf);
    sign = sort_with_sign(buf, idx.size());
    if (sign == 0) return nullptr;
    auto it = brackets_.find(key_of(std::span<const std::size_t>(buf, idx.size())));
    return it == brackets_.end() ? nullptr : &it->second;
}

void StructAlgebra::set_bracket(std::span<const std::size_t> idx, const Vector& value) {
    if (idx.size() != arity_) throw std::invalid_argument("bracket tuple has wrong length");
    for (std::size_t i : idx) {
        if (i >= dim_) throw std::out_of_range("bracket index out of range");
    }
    check_vector(value, dim_);
    IndexTuple key_idx(idx.begin(), idx.end());
    int sign = 1;
    if (symmetry_ == BracketSymmetry::Alternating) {
        sign = sort_with_sign(key_idx.data(), key_idx.size());
        if (sign == 0) {
            if (!is_zero_vector(value)) throw std::invalid_argument("alternating bracket with a repeated index must be zero");
            return;
        }
    }
    SparseVector stored = to_sparse(value);
    if (sign < 0) {
        for (auto& [i, c] : stored) c = -c;
    }
    auto key = key_of(key_idx);
    if (stored.empty()) {
        brackets_.erase(key);
    } else {
        brackets_[key] = std::move(stored);
    }
}

void StructAlgebra::set_product(std::size_t i, std::size_t j, const Vector& value) {
    if (i >= dim_ || j >= dim_) throw std::out_of_range("product index out of range");
    check_vector(value, dim_);
    if (i > j) std::swap(i, j);
    auto key = static_cast<std::uint64_t>(i) * dim_ + j;
    SparseVector stored = to_sparse(value);
    if (stored.empty()) {
        products_.erase(key);
    } else {
        products_[key] = std::move(stored);
    }
}

void StructAlgebra::add_bracket_basis(std::span<const std::size_t> idx, const Scalar& c, Vector& out) const {
    int sign = 0;
    const SparseVector* entry = lookup(idx, sign);
    if (!entry) return;
    if (sign > 0) {
        for (const auto& [k, v] : *entry) out[k] += c * v;
    } else {
        for (const auto& [k, v] : *entry) out[k] -= c * v;
    }
}

Vector StructAlgebra::bracket_basis(std::span<const std::size_t> idx) const {
    if (idx.size() != arity_) throw std::invalid_argument("bracket tuple has wrong length");
    Vector out(dim_);
    add_bracket_basis(idx, Scalar(1), out);
    return out;
}

void StructAlgebra::add_product_basis(std::size_t i, std::size_t j, const Scalar& c, Vector& out) const {
    if (i > j) std::swap(i, j);
    auto it = products_.find(static_cast<std::uint64_t>(i) * dim_ + j);
    if (it == products_.end()) return;
    for (const auto& [k, v] : it->second) out[k] += c * v;
}

Vector StructAlgebra::product_basis(std::size_t i, std::size_t j) const {
    Vector out(dim_);
    add_product_basis(i, j, Scalar(1), out);
    return out;
}

Vector StructAlgebra::bracket(const std::vector<Vector>& args) const {
    if (args.size() != arity_) throw std::invalid_argument("bracket needs arity arguments");
    std::vector<SparseVector> supports;
    supports.reserve(args.size());
    for (const auto& a : args) {
        check_vector(a, dim_);
        supports.push_back(to_sparse(a));
        if (supports.back().empty()) return Vector(dim_);
    }
    Vector out(dim_);
    if (brackets_.empty()) return out;
    IndexTuple idx(arity_);
    std::vector<Scalar> coeff(arity_ + 1);
    coeff[0] = 1;
    bool alt = alternating();
    std::function<void(std::size_t)> rec = [&](std::size_t slot) {
        if (slot == arity_) {
            add_bracket_basis(idx, coeff[slot], out);
            return;
        }
        for (const auto& [i, c] : supports[slot]) {
            if (alt && std::find(idx.begin(), idx.begin() + slot, i) != idx.begin() + slot) continue;
            idx[slot] = i;
            coeff[slot + 1] = coeff[slot] * c;
            rec(slot + 1);
        }
    };
    rec(0);
    return out;
}

Vector StructAlgebra::product(const Vector& a, const Vector& b) const {
    check_vector(a, dim_);
    check_vector(b, dim_);
    Vector out(dim_);
    if (products_.empty()) return out;
    auto sa = to_sparse(a), sb = to_sparse(b);
    for (const auto& [i, ci] : sa) {
        for (const auto& [j, cj] : sb) add_product_basis(i, j, ci * cj, out);
    }
    return out;
}

StructAlgebra StructAlgebra::with_zero_product() const {
    StructAlgebra out = *this;
    out.products_.clear();
    return out;
}

StructAlgebra StructAlgebra::with_zero_bracket() const {
    StructAlgebra out = *this;
    out.brackets_.clear();
    return out;
}

StructAlgebra StructAlgebra::to_alternating() const {
    if (alternating()) return *this;
    StructAlgebra out(dim_, arity_, BracketSymmetry::Alternating);
    out.products_ = products_;
    for (const auto& [key, value] : brackets_) {
        IndexTuple idx = decode_bracket_key(key);
        IndexTuple sorted = idx;
        int sign = sort_with_sign(sorted.data(), sorted.size());
        if (sign == 0) throw std::domain_error("bracket is nonzero on a repeated index");
        Vector v = to_dense(value, dim_);
        if (sign < 0) {
            for (auto& c : v) c = -c;
        }
        auto skey = key_of(sorted);
        auto it = out.brackets_.find(skey);
        if (it == out.brackets_.end()) {
            out.brackets_[skey] = to_sparse(v);
        } else if (it->second != to_sparse(v)) {
            throw std::domain_error("bracket is not antisymmetric");
        }
    }
    // Every permutation of a stored tuple must be present with the matching sign.
    for (const auto& [skey, value] : out.brackets_) {
        IndexTuple sorted = out.decode_bracket_key(skey);
        IndexTuple perm = sorted;
        do {
            IndexTuple p = perm;
            int s = sort_with_sign(p.data(), p.size());
            Vector expect = to_dense(value, dim_);
            if (s < 0) {
                for (auto& c : expect) c = -c;
            }
            if (bracket_basis(perm) != expect) throw std::domain_error("bracket is not antisymmetric");
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return out;
}

Subspace Subspace::full(std::size_t ambient) {
    Subspace s(ambient);
    for (std::size_t i = 0; i < ambient; ++i) {
        s.rows_.push_back(basis_vector(ambient, i));
        s.pivots_.push_back(i);
    }
    return s;
}

Subspace Subspace::span(std::size_t ambient, const std::vector<Vector>& vectors) {
    SpanBuilder b(ambient);
    for (const auto& v : vectors) {
        if (b.full()) break;
        b.add(v);
    }
    return std::move(b).build();
}

Subspace Subspace::coordinate(std::size_t ambient, const IndexTuple& indices) {
    std::vector<Vector> vs;
    for (std::size_t i : indices) vs.push_back(basis_vector(ambient, i));
    return span(ambient, vs);
}

Vector Subspace::reduce(Vector v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector length does not match subspace ambient");
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        const Scalar f = v[pivots_[r]];
        if (pnlie::is_zero(f)) continue;
        const Vector& row = rows_[r];
        for (std::size_t c = pivots_[r]; c < ambient_; ++c) {
            if (!pnlie::is_zero(row[c])) v[c] -= f * row[c];
        }
    }
    return v;
}

bool Subspace::contains(const Vector& v) const { return is_zero_vector(reduce(v)); }

bool Subspace::contains(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("subspaces of different spaces");
    if (other.dim() > dim()) return false;
    for (const auto& r : other.rows_) {
        if (!contains(r)) return false;
    }
    return true;
}

Vector Subspace::coordinates(const Vector& v) const {
    if (!contains(v)) throw std::invalid_argument("vector is not in the subspace");
    Vector out(rows_.size());
    for (std::size_t r = 0; r < rows_.size(); ++r) out[r] = v[pivots_[r]];
    return out;
}

IndexTuple Subspace::complement_indices() const {
    IndexTuple out;
    std::size_t p = 0;
    for (std::size_t i = 0; i < ambient_; ++i) {
        if (p < pivots_.size() && pivots_[p] == i) {
            ++p;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

Subspace Subspace::operator+(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("subspaces of different spaces");
    SpanBuilder b(*this);
    for (const auto& r : other.rows_) {
        if (b.full()) break;
        b.add(r);
    }
    return std::move(b).build();
}

Subspace Subspace::intersect(const Subspace& other) const {
    if (other.ambient_ != ambient_) throw std::invalid_argument("subspaces of different spaces");
    if (is_zero() || other.is_zero()) return Subspace(ambient_);
    // x = sum a_i u_i lies in other iff sum a_i reduce_other(u_i) = 0.
    QMatrix m(ambient_, rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        Vector r = other.reduce(rows_[i]);
        for (std::size_t k = 0; k < ambient_; ++k) m(k, i) = r[k];
    }
    std::vector<Vector> out;
    for (const auto& a : nullspace(m)) {
        Vector x(ambient_);
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (pnlie::is_zero(a[i])) continue;
            for (std::size_t k = 0; k < ambient_; ++k) x[k] += a[i] * rows_[i][k];
        }
        out.push_back(std::move(x));
    }
    return span(ambient_, out);
}

std::string Subspace::to_string() const {
    if (rows_.empty()) return "0";
    std::string s = "span(";
    for (std::size_t r = 0; r < rows_.size(); ++r) {
        if (r) s += ", ";
        s += vector_expression(rows_[r]);
    }
    return s + ")";
}

bool SpanBuilder::add(Vector v) {
    Subspace& s = space_;
    v = s.reduce(std::move(v));
    std::size_t p = 0;
    while (p < v.size() && is_zero(v[p])) ++p;
    if (p == v.size()) return false;
    const Scalar inv = 1 / v[p];
    for (std::size_t c = p; c < v.size(); ++c) {
        if (!is_zero(v[c])) v[c] *= inv;
    }
    for (auto& row : s.rows_) {
        const Scalar f = row[p];
        if (pnlie::is_zero(f)) continue;
        for (std::size_t c = p; c < v.size(); ++c) {
            if (!is_zero(v[c])) row[c] -= f * v[c];
        }
    }
    auto pos = std::lower_bound(s.pivots_.begin(), s.pivots_.end(), p) - s.pivots_.begin();
    s.pivots_.insert(s.pivots_.begin() + pos, p);
    s.rows_.insert(s.rows_.begin() + pos, std::move(v));
    return true;
}

}  // namespace pnlie
