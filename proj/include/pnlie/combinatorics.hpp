#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace pnlie {

/// Zero-based index list. As an IndexTuple it is strictly increasing.
using IndexTuple = std::vector<std::size_t>;

/// All k-subsets of {0..total-1}, strictly increasing, in lexicographic order.
std::vector<IndexTuple> index_subsets(std::size_t total, std::size_t k);

/// All ordered k-tuples of distinct elements of {0..total-1}, lexicographic.
std::vector<IndexTuple> ordered_tuples(std::size_t total, std::size_t k);

/// All total^k tuples with repetition allowed, lexicographic.
std::vector<IndexTuple> all_tuples(std::size_t total, std::size_t k);

IndexTuple complement(const IndexTuple& subset, std::size_t total);

/// Sign of the sequence as a permutation of its sorted self: +1, -1, or 0
/// when an entry repeats.
int sequence_sign(std::span<const std::size_t> values);

std::uint64_t factorial(std::size_t k);
std::uint64_t binomial(std::size_t total, std::size_t k);

/// Permutation of {0..k-1} with the given Lehmer rank (rank 0 is the identity,
/// ranks increase lexicographically).
std::vector<std::size_t> permutation_from_rank(std::size_t k, std::uint64_t rank);

/// Reorders `base` by the permutation with the given Lehmer rank: out[p] = base[perm[p]].
IndexTuple permute_by_rank(const IndexTuple& base, std::uint64_t rank);

}  // namespace pnlie
