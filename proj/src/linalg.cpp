#include "pnlie/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace pnlie {

QMatrix QMatrix::identity(std::size_t k) {
    QMatrix m(k, k);
    for (std::size_t i = 0; i < k; ++i) m(i, i) = 1;
    return m;
}

QMatrix QMatrix::from_rows(const std::vector<Vector>& rows, std::size_t cols) {
    QMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
}

Vector QMatrix::row(std::size_t r) const { return Vector(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vector QMatrix::column(std::size_t c) const {
    Vector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
}

Vector QMatrix::apply(const Vector& x) const {
    if (x.size() != cols_) throw std::invalid_argument("matrix-vector size mismatch");
    Vector y(rows_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (sgn(x[c]) == 0) continue;
        for (std::size_t r = 0; r < rows_; ++r) {
            const Scalar& a = (*this)(r, c);
            if (sgn(a) != 0) y[r] += a * x[c];
        }
    }
    return y;
}

QMatrix QMatrix::transpose() const {
    QMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    }
    return t;
}

bool QMatrix::is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product size mismatch");
    QMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Scalar& x = a(i, k);
            if (sgn(x) == 0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) {
                if (sgn(b(k, j)) != 0) out(i, j) += x * b(k, j);
            }
        }
    }
    return out;
}

QMatrix operator+(const QMatrix& a, const QMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("matrix sum size mismatch");
    QMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
}

QMatrix operator-(const QMatrix& a, const QMatrix& b) { return a + b.scaled(-1); }

QMatrix QMatrix::scaled(const Scalar& s) const {
    QMatrix out = *this;
    for (auto& x : out.data_) x *= s;
    return out;
}

QMatrix QMatrix::pow(std::size_t k) const {
    if (rows_ != cols_) throw std::invalid_argument("power of a non-square matrix");
    QMatrix result = identity(rows_), base = *this;
    while (k > 0) {
        if (k & 1) result = result * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return result;
}

Echelon rref(QMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t p = row;
        while (p < m.rows() && sgn(m(p, col)) == 0) ++p;
        if (p == m.rows()) continue;
        if (p != row) {
            for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(p, c), m(row, c));
        }
        Scalar inv = 1 / m(row, col);
        for (std::size_t c = col; c < m.cols(); ++c) m(row, c) *= inv;
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r == row || sgn(m(r, col)) == 0) continue;
            Scalar f = m(r, col);
            for (std::size_t c = col; c < m.cols(); ++c) {
                if (sgn(m(row, c)) != 0) m(r, c) -= f * m(row, c);
            }
        }
        pivots.push_back(col);
        ++row;
    }
    QMatrix trimmed(pivots.size(), m.cols());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) trimmed(r, c) = m(r, c);
    }
    return {std::move(trimmed), std::move(pivots)};
}

std::size_t rank(const QMatrix& m) { return rref(m).pivots.size(); }

std::optional<QMatrix> inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t k = m.rows();
    QMatrix wide(k, 2 * k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) wide(r, c) = m(r, c);
        wide(r, k + r) = 1;
    }
    Echelon e = rref(std::move(wide));
    if (e.pivots.size() < k || (k > 0 && e.pivots[k - 1] != k - 1)) return std::nullopt;
    QMatrix out(k, k);
    for (std::size_t r = 0; r < k; ++r) {
        for (std::size_t c = 0; c < k; ++c) out(r, c) = e.matrix(r, k + c);
    }
    return out;
}

Scalar determinant(QMatrix m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant of a non-square matrix");
    Scalar det = 1;
    const std::size_t k = m.rows();
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t p = col;
        while (p < k && sgn(m(p, col)) == 0) ++p;
        if (p == k) return 0;
        if (p != col) {
            for (std::size_t c = 0; c < k; ++c) std::swap(m(p, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < k; ++r) {
            if (sgn(m(r, col)) == 0) continue;
            Scalar f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < k; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

std::vector<Vector> nullspace(const QMatrix& m) {
    Echelon e = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;
    std::vector<Vector> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vector v(m.cols());
        v[free] = 1;
        for (std::size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.matrix(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

bool is_nilpotent(const QMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("nilpotency of a non-square matrix");
    return m.pow(m.rows()).is_zero();
}

std::vector<Scalar> charpoly(const QMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("characteristic polynomial of a non-square matrix");
    const std::size_t n = a.rows();
    std::vector<Scalar> c(n + 1);
    c[n] = 1;
    QMatrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        QMatrix next = a * mk;
        for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
        mk = std::move(next);
        QMatrix am = a * mk;
        Scalar trace = 0;
        for (std::size_t i = 0; i < n; ++i) trace += am(i, i);
        c[n - k] = -trace / static_cast<long>(k);
    }
    return c;
}

namespace {

std::vector<mpz_class> divisors(mpz_class value) {
    value = abs(value);
    if (value > mpz_class("100000000000000")) throw std::runtime_error("rational root search: constant term too large");
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= value; ++d) {
        if (value % d == 0) {
            small.push_back(d);
            if (d * d != value) large.push_back(value / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

Scalar evaluate(const std::vector<Scalar>& c, const Scalar& x) {
    Scalar acc = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

}  // namespace

std::vector<Scalar> rational_roots(const std::vector<Scalar>& coefficients) {
    std::vector<Scalar> c = coefficients;
    while (!c.empty() && sgn(c.back()) == 0) c.pop_back();
    if (c.size() <= 1) return {};
    std::vector<Scalar> roots;
    std::size_t shift = 0;
    while (shift < c.size() && sgn(c[shift]) == 0) ++shift;
    if (shift > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(shift));
    }
    if (c.size() > 1) {
        mpz_class lcm_den = 1;
        for (const auto& x : c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den().get_mpz_t());
        std::vector<mpz_class> ints;
        for (const auto& x : c) ints.push_back(mpz_class(x * lcm_den));
        for (const auto& p : divisors(ints.front())) {
            for (const auto& q : divisors(ints.back())) {
                for (int s : {1, -1}) {
                    Scalar cand(p * s, q);
                    cand.canonicalize();
                    if (sgn(evaluate(c, cand)) == 0 &&
                        std::find(roots.begin(), roots.end(), cand) == roots.end()) {
                        roots.push_back(cand);
                    }
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

bool is_zero_vector(const Vector& v) {
    return std::all_of(v.begin(), v.end(), [](const Scalar& s) { return sgn(s) == 0; });
}

std::string vector_to_string(const Vector& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ", ";
        s += to_string(v[i]);
    }
    return s + ")";
}

}  // namespace pnlie
