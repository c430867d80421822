#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnlie/laurent.hpp"

namespace pnlie {

/// A derivation d = sum_j c_j * d/dt_j of the Laurent ring in v variables.
class Derivation {
public:
    enum class Kind { Partial, Euler, General };

    static Derivation partial(std::size_t num_vars, std::size_t index);
    static Derivation euler(std::size_t num_vars, std::size_t index);
    static Derivation general(std::vector<LaurentPolynomial> coefficients);

    Kind kind() const { return kind_; }
    std::size_t num_vars() const { return num_vars_; }
    /// Zero-based variable index for Partial and Euler.
    std::size_t index() const { return index_; }
    /// The coefficient vector c_1..c_v, materialized for every kind.
    std::vector<LaurentPolynomial> coefficients() const;

    LaurentPolynomial apply(const LaurentPolynomial& p) const;

    std::string describe() const;

private:
    Derivation(Kind kind, std::size_t num_vars, std::size_t index) : kind_(kind), num_vars_(num_vars), index_(index) {}

    Kind kind_;
    std::size_t num_vars_;
    std::size_t index_ = 0;
    std::vector<LaurentPolynomial> general_;
};

inline LaurentPolynomial apply_derivation(const Derivation& d, const LaurentPolynomial& p) { return d.apply(p); }

/// Coefficient vector of [d1, d2] as a derivation: e_j = d1(c2_j) - d2(c1_j).
std::vector<LaurentPolynomial> commutator_defect(const Derivation& d1, const Derivation& d2);

/// An ordered family d_1..d_k. Construction through `certify` guarantees the
/// members commute pairwise; brackets refuse uncertified families.
class DerivationFamily {
public:
    DerivationFamily() = default;

    /// Throws std::invalid_argument naming the first non-commuting pair.
    static DerivationFamily certify(std::vector<Derivation> members);
    /// Returns the first non-commuting pair (zero-based), if any.
    static std::optional<std::pair<std::size_t, std::size_t>> find_noncommuting(const std::vector<Derivation>& members);

    /// d_i = t_i d/dt_i for i = 1..count on a ring with `num_vars` variables.
    static DerivationFamily euler(std::size_t num_vars, std::size_t count);
    static DerivationFamily partial(std::size_t num_vars, std::size_t count);

    std::size_t size() const { return members_.size(); }
    const Derivation& operator[](std::size_t i) const { return members_[i]; }
    bool certified() const { return certified_; }
    std::size_t num_vars() const { return members_.empty() ? 0 : members_[0].num_vars(); }

private:
    std::vector<Derivation> members_;
    bool certified_ = false;
};

}  // namespace pnlie
