#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pnlie/structure.hpp"

namespace pnlie {

struct PropertyCheck {
    std::string name;
    bool holds = true;
    std::size_t checked = 0;
    /// First failing case, empty when the property holds.
    std::string detail;
};

struct StructureCheckReport {
    std::vector<PropertyCheck> checks;
    bool all() const;
    const PropertyCheck& get(const std::string& name) const;
};

struct StructureCheckOptions {
    /// Largest series index used in the inclusion checks.
    std::size_t max_power = 4;
    /// Largest k in the lower-central embedding check.
    std::size_t max_embedding = 5;
};

/// Series inclusions and the nilpotency/solvability equivalences, each as a
/// named exact check:
///
///   product_of_powers          P^i * P^j <= P^{i+j}
///   bracket_of_powers          [P^{i_1}..P^{i_k}, P..P] <= P^{i_1+..+i_k-k+2}
///   derived_in_lower_central   P^(i) <= P^{2^{i-1}}
///   derived_of_derived         (P^(i))^(j) = P^(i+j-1)
///   lower_central_embedding    I^k <= sum I^{r_1)} * prod I^{(r_i}, r_1+..+r_t = k
///   bracket_absorbs_power      [I^{k+1)}, I, P..P] <= I^{k)} * I^{(2}
///   bracket_of_products        [prod I^{(k_i}, I, P..P] <= sum_i prod_{j!=i} I^{(k_j} * I^{(k_i+1}
///   bracket_of_products_equal  the same with equality
///   square_derived             (P*P)^(k) <= P^(k+1)
///   nilpotent_iff_parts        nilpotent <=> P_A and P_L nilpotent
///   engel                      nilpotent <=> every P_{e_i}, Q_{e_t} nilpotent
///   solvable_iff_square        solvable <=> the ideal P^2 is nilpotent
///   solvable_iff_parts         solvable <=> P_L solvable and P_A nilpotent
///
/// P^k is the lower central series, P^(k) the derived series, I^{k)} the
/// associative powers and I^{(k} the bracket powers. The embedding checks run
/// over the ideals P, P^2 and the ideal closures of the first and last basis
/// vectors.
StructureCheckReport check_structure_properties(const StructAlgebra& p, const StructureCheckOptions& options = {});

}  // namespace pnlie
