#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "pnlie/algebra.hpp"

namespace pnlie {

struct AxiomResult {
    std::string name;
    bool holds = true;
    /// Basis tuples checked (0 when the axiom holds by construction).
    std::size_t checked = 0;
    /// First failing basis-index tuple in enumeration order.
    std::optional<IndexTuple> witness;
};

struct AxiomReport {
    AxiomResult commutative{"commutative", true, 0, std::nullopt};
    AxiomResult associative{"associative", true, 0, std::nullopt};
    AxiomResult skew{"skew", true, 0, std::nullopt};
    AxiomResult fundamental{"fundamental", true, 0, std::nullopt};
    AxiomResult leibniz{"leibniz", true, 0, std::nullopt};

    bool all() const {
        return commutative.holds && associative.holds && skew.holds && fundamental.holds && leibniz.holds;
    }
    std::vector<const AxiomResult*> items() const {
        return {&commutative, &associative, &skew, &fundamental, &leibniz};
    }
};

/// Exhaustive basis-tuple check of the Poisson n-Lie axioms.
///
/// fundamental: [x_1..x_{n-1}, [y_1..y_n]] = sum_i [y_1..[x_1..x_{n-1}, y_i]..y_n],
/// witness (x_1..x_{n-1}, y_1..y_n).
/// leibniz (first slot): [y*z, x_2..x_n] = y*[z, x_2..x_n] + z*[y, x_2..x_n],
/// witness (y, z, x_2..x_n).
/// Alternating brackets are checked on increasing tuples only.
AxiomReport verify_axioms(const StructAlgebra& p, unsigned threads = 1);

/// The fundamental identity defect on one basis tuple.
Vector fundamental_identity_defect(const StructAlgebra& p, const IndexTuple& xs, const IndexTuple& ys);
/// Same on arbitrary vectors.
Vector fundamental_identity_defect(const StructAlgebra& p, const std::vector<Vector>& xs, const std::vector<Vector>& ys);

}  // namespace pnlie
