#include "pnlie/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace pnlie {

namespace {

void subsets_rec(std::size_t total, std::size_t k, std::size_t start, IndexTuple& cur, std::vector<IndexTuple>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = start; i + (k - cur.size()) <= total; ++i) {
        cur.push_back(i);
        subsets_rec(total, k, i + 1, cur, out);
        cur.pop_back();
    }
}

void ordered_rec(std::size_t total, std::size_t k, std::vector<bool>& used, IndexTuple& cur,
                 std::vector<IndexTuple>& out) {
    if (cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (std::size_t i = 0; i < total; ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(i);
        ordered_rec(total, k, used, cur, out);
        cur.pop_back();
        used[i] = false;
    }
}

}  // namespace

std::vector<IndexTuple> index_subsets(std::size_t total, std::size_t k) {
    std::vector<IndexTuple> out;
    if (k > total) return out;
    IndexTuple cur;
    subsets_rec(total, k, 0, cur, out);
    return out;
}

std::vector<IndexTuple> ordered_tuples(std::size_t total, std::size_t k) {
    std::vector<IndexTuple> out;
    if (k > total) return out;
    std::vector<bool> used(total, false);
    IndexTuple cur;
    ordered_rec(total, k, used, cur, out);
    return out;
}

std::vector<IndexTuple> all_tuples(std::size_t total, std::size_t k) {
    std::vector<IndexTuple> out;
    if (total == 0 && k > 0) return out;
    IndexTuple t(k, 0);
    while (true) {
        out.push_back(t);
        std::size_t i = k;
        while (i > 0 && ++t[i - 1] == total) t[--i] = 0;
        if (i == 0) return out;
    }
}

IndexTuple complement(const IndexTuple& subset, std::size_t total) {
    std::vector<bool> in(total, false);
    for (auto i : subset) {
        if (i >= total) throw std::out_of_range("index outside 0..total-1");
        in[i] = true;
    }
    IndexTuple out;
    for (std::size_t i = 0; i < total; ++i) {
        if (!in[i]) out.push_back(i);
    }
    return out;
}

int sequence_sign(std::span<const std::size_t> values) {
    int sign = 1;
    for (std::size_t a = 0; a < values.size(); ++a) {
        for (std::size_t b = a + 1; b < values.size(); ++b) {
            if (values[a] == values[b]) return 0;
            if (values[a] > values[b]) sign = -sign;
        }
    }
    return sign;
}

std::uint64_t factorial(std::size_t k) {
    std::uint64_t f = 1;
    for (std::size_t i = 2; i <= k; ++i) f *= i;
    return f;
}

std::uint64_t binomial(std::size_t total, std::size_t k) {
    if (k > total) return 0;
    std::uint64_t r = 1;
    for (std::size_t i = 1; i <= k; ++i) r = r * (total - k + i) / i;
    return r;
}

std::vector<std::size_t> permutation_from_rank(std::size_t k, std::uint64_t rank) {
    if (rank >= factorial(k)) throw std::out_of_range("permutation rank out of range");
    std::vector<std::size_t> pool(k);
    for (std::size_t i = 0; i < k; ++i) pool[i] = i;
    std::vector<std::size_t> out;
    out.reserve(k);
    for (std::size_t i = k; i > 0; --i) {
        std::uint64_t f = factorial(i - 1);
        std::size_t pick = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[pick]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    return out;
}

IndexTuple permute_by_rank(const IndexTuple& base, std::uint64_t rank) {
    auto perm = permutation_from_rank(base.size(), rank);
    IndexTuple out(base.size());
    for (std::size_t p = 0; p < base.size(); ++p) out[p] = base[perm[p]];
    return out;
}

}  // namespace pnlie
