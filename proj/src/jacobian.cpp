#include "pnlie/jacobian.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace pnlie {

AdjoinedMatrix::AdjoinedMatrix(std::size_t n_, std::size_t m_, std::size_t num_vars)
    : n(n_), m(m_), a(n_ + m_, m_, num_vars) {
    if (n < 2) throw std::invalid_argument("bracket arity must be at least 2");
}

AdjoinedMatrix::AdjoinedMatrix(std::size_t n_, RingMatrix entries) : n(n_), m(entries.cols()), a(std::move(entries)) {
    if (n < 2) throw std::invalid_argument("bracket arity must be at least 2");
    if (a.rows() != n + m) throw std::invalid_argument("adjoined matrix must have n+m rows");
}

int complement_sign(const IndexTuple& subset, std::size_t n, std::size_t m) {
    if (subset.size() != n) throw std::invalid_argument("index tuple must have n entries");
    IndexTuple seq = subset;
    IndexTuple rest = complement(subset, n + m);
    seq.insert(seq.end(), rest.begin(), rest.end());
    int s = sequence_sign(seq);
    if (s == 0) throw std::invalid_argument("index tuple repeats an entry");
    return s;
}

LaurentPolynomial pi_coefficient(const IndexTuple& subset, const AdjoinedMatrix& a) {
    const std::size_t v = a.num_vars();
    if (subset.size() != a.n) return LaurentPolynomial(v);
    IndexTuple sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return LaurentPolynomial(v);
    if (sorted.back() >= a.rows()) throw std::out_of_range("index outside 1..n+m");
    IndexTuple cols(a.m);
    for (std::size_t j = 0; j < a.m; ++j) cols[j] = j;
    LaurentPolynomial d = det_ring(a.a.select(complement(sorted, a.rows()), cols));
    return complement_sign(sorted, a.n, a.m) > 0 ? d : -d;
}

LaurentPolynomial alternating_coefficient(std::span<const std::size_t> tuple, const AdjoinedMatrix& a) {
    int s = sequence_sign(tuple);
    if (s == 0 || tuple.size() != a.n) return LaurentPolynomial(a.num_vars());
    LaurentPolynomial p = pi_coefficient(IndexTuple(tuple.begin(), tuple.end()), a);
    return s > 0 ? p : -p;
}

namespace {

void check_family(const DerivationFamily& ds, std::size_t rows, std::size_t num_vars) {
    if (!ds.certified()) throw std::invalid_argument("derivation family is not certified");
    if (ds.size() != rows) throw std::invalid_argument("derivation family must have n+m members");
    if (ds.num_vars() != num_vars) throw std::invalid_argument("derivations and matrix differ in variable count");
}

}  // namespace

LaurentPolynomial jac_minor(const IndexTuple& subset, std::span<const LaurentPolynomial> xs,
                            const DerivationFamily& ds) {
    if (subset.size() != xs.size()) throw std::invalid_argument("Jac_I needs |I| arguments");
    const std::size_t v = ds.num_vars();
    RingMatrix d(subset.size(), xs.size(), v);
    for (std::size_t p = 0; p < subset.size(); ++p) {
        for (std::size_t q = 0; q < xs.size(); ++q) d(p, q) = ds[subset[p]].apply(xs[q]);
    }
    return det_ring(d);
}

LaurentPolynomial jac_minor_permutation_sum(const IndexTuple& subset, std::span<const LaurentPolynomial> xs,
                                            const DerivationFamily& ds) {
    if (subset.size() != xs.size()) throw std::invalid_argument("Jac_I needs |I| arguments");
    const std::size_t n = subset.size();
    const std::size_t v = ds.num_vars();
    LaurentPolynomial sum(v);
    for (std::uint64_t rank = 0; rank < factorial(n); ++rank) {
        auto perm = permutation_from_rank(n, rank);
        LaurentPolynomial prod = LaurentPolynomial::constant(v, sequence_sign(perm));
        for (std::size_t p = 0; p < n && !prod.is_zero(); ++p) prod *= ds[subset[perm[p]]].apply(xs[p]);
        sum += prod;
    }
    return sum;
}

DeterminantBracket::DeterminantBracket(AdjoinedMatrix a, DerivationFamily ds) : a_(std::move(a)), ds_(std::move(ds)) {
    check_family(ds_, a_.rows(), a_.num_vars());
    subsets_ = index_subsets(a_.rows(), a_.n);
    pi_.reserve(subsets_.size());
    for (const auto& s : subsets_) pi_.push_back(pi_coefficient(s, a_));
}

LaurentPolynomial DeterminantBracket::operator()(std::span<const LaurentPolynomial> xs, BracketMethod method) const {
    const std::size_t n = a_.n, rows = a_.rows(), v = num_vars();
    if (xs.size() != n) throw std::invalid_argument("bracket needs exactly n arguments");
    RingMatrix full(rows, rows, v);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t q = 0; q < n; ++q) full(r, q) = ds_[r].apply(xs[q]);
        for (std::size_t j = 0; j < a_.m; ++j) full(r, n + j) = a_.a(r, j);
    }
    if (method == BracketMethod::Full) return det_ring(full);
    LaurentPolynomial sum(v);
    IndexTuple cols(n);
    for (std::size_t q = 0; q < n; ++q) cols[q] = q;
    for (std::size_t k = 0; k < subsets_.size(); ++k) {
        if (pi_[k].is_zero()) continue;
        sum += pi_[k] * det_ring(full.select(subsets_[k], cols));
    }
    return sum;
}

LaurentPolynomial DeterminantBracket::leibniz_defect(const LaurentPolynomial& y, const LaurentPolynomial& z,
                                                     std::span<const LaurentPolynomial> xs) const {
    if (xs.size() + 1 != a_.n) throw std::invalid_argument("leibniz defect needs n-1 trailing arguments");
    std::vector<LaurentPolynomial> args(a_.n, LaurentPolynomial(num_vars()));
    std::copy(xs.begin(), xs.end(), args.begin() + 1);
    args[0] = y * z;
    LaurentPolynomial out = (*this)(args);
    args[0] = z;
    out -= y * (*this)(args);
    args[0] = y;
    out -= z * (*this)(args);
    return out;
}

LaurentPolynomial DeterminantBracket::fundamental_defect(std::span<const LaurentPolynomial> xs,
                                                         std::span<const LaurentPolynomial> ys) const {
    const std::size_t n = a_.n;
    if (xs.size() + 1 != n || ys.size() != n) throw std::invalid_argument("fundamental defect needs n-1 and n arguments");
    std::vector<LaurentPolynomial> outer(xs.begin(), xs.end());
    outer.push_back((*this)(ys));
    LaurentPolynomial out = (*this)(outer);
    for (std::size_t i = 0; i < n; ++i) {
        outer.back() = ys[i];
        std::vector<LaurentPolynomial> inner(ys.begin(), ys.end());
        inner[i] = (*this)(outer);
        out -= (*this)(inner);
    }
    return out;
}

LaurentPolynomial bracket(std::span<const LaurentPolynomial> xs, const AdjoinedMatrix& a, const DerivationFamily& ds,
                          BracketMethod method) {
    return DeterminantBracket(a, ds)(xs, method);
}

LaurentPolynomial leibniz_defect(const LaurentPolynomial& y, const LaurentPolynomial& z,
                                 std::span<const LaurentPolynomial> xs, const AdjoinedMatrix& a,
                                 const DerivationFamily& ds) {
    return DeterminantBracket(a, ds).leibniz_defect(y, z, xs);
}

LaurentPolynomial fundamental_defect(std::span<const LaurentPolynomial> xs, std::span<const LaurentPolynomial> ys,
                                     const AdjoinedMatrix& a, const DerivationFamily& ds) {
    return DeterminantBracket(a, ds).fundamental_defect(xs, ys);
}

SamplePool::SamplePool(std::size_t num_vars, std::uint64_t seed, std::int32_t radius, std::size_t binomials)
    : num_vars_(num_vars), radius_(radius), box_size_(1) {
    if (radius < 0) throw std::invalid_argument("sample radius must be nonnegative");
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(radius) + 1;
    for (std::size_t i = 0; i < num_vars; ++i) {
        if (box_size_ > (std::uint64_t{1} << 50) / side) throw std::invalid_argument("sample box too large");
        box_size_ *= side;
    }
    std::mt19937_64 rng(seed);
    for (std::size_t b = 0; b < binomials; ++b) {
        auto c1 = static_cast<std::int64_t>(rng() % 7) - 3;
        auto c2 = static_cast<std::int64_t>(rng() % 7) - 3;
        if (c1 == 0) c1 = 1;
        if (c2 == 0) c2 = -1;
        LaurentPolynomial p = box_monomial(rng() % box_size_) * Scalar(c1);
        p += box_monomial(rng() % box_size_) * Scalar(c2);
        if (p.is_zero()) p = LaurentPolynomial::constant(num_vars, 1);
        binomials_.push_back(std::move(p));
    }
}

LaurentPolynomial SamplePool::box_monomial(std::uint64_t index) const {
    const std::uint64_t side = 2 * static_cast<std::uint64_t>(radius_) + 1;
    Exponents e(num_vars_);
    for (std::size_t i = 0; i < num_vars_; ++i) {
        e[i] = static_cast<std::int32_t>(index % side) - radius_;
        index /= side;
    }
    return LaurentPolynomial::monomial(std::move(e));
}

LaurentPolynomial SamplePool::element(std::uint64_t index) const {
    if (index < box_size_) return box_monomial(index);
    return binomials_.at(index - box_size_);
}

SampledCheck sample_fundamental(const DeterminantBracket& br, std::uint64_t samples, std::uint64_t seed) {
    SamplePool pool(br.num_vars(), seed);
    std::mt19937_64 rng(seed ^ 0x5bd1e995u);
    SampledCheck out;
    const std::size_t n = br.arity();
    for (std::uint64_t s = 0; s < samples; ++s) {
        std::vector<LaurentPolynomial> xs, ys;
        for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back(pool.element(rng() % pool.size()));
        for (std::size_t i = 0; i < n; ++i) ys.push_back(pool.element(rng() % pool.size()));
        LaurentPolynomial d = br.fundamental_defect(xs, ys);
        ++out.samples;
        if (!d.is_zero()) {
            ++out.nonzero;
            if (!out.witness) out.witness = FundamentalWitness{xs, ys, d};
        }
    }
    return out;
}

SampledCheck sample_leibniz(const DeterminantBracket& br, std::uint64_t samples, std::uint64_t seed) {
    SamplePool pool(br.num_vars(), seed);
    std::mt19937_64 rng(seed ^ 0x9e3779b9u);
    SampledCheck out;
    const std::size_t n = br.arity();
    for (std::uint64_t s = 0; s < samples; ++s) {
        auto y = pool.element(rng() % pool.size());
        auto z = pool.element(rng() % pool.size());
        std::vector<LaurentPolynomial> xs;
        for (std::size_t i = 0; i + 1 < n; ++i) xs.push_back(pool.element(rng() % pool.size()));
        LaurentPolynomial d = br.leibniz_defect(y, z, xs);
        ++out.samples;
        if (!d.is_zero()) {
            ++out.nonzero;
            if (!out.witness) out.witness = FundamentalWitness{xs, {y, z}, d};
        }
    }
    return out;
}

}  // namespace pnlie
