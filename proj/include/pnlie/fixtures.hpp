#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "pnlie/algebra.hpp"

namespace pnlie {

/// dim m+1, arity n: [e_i, e_{m-n+2}, ..., e_m] = e_i for i <= m-n+1 and
/// e_{m-n+2} e_{m-n+3} = e_{m+1} (one-based). Requires n >= 4, m >= n.
StructAlgebra fixture_hypo(std::size_t n = 4, std::size_t m = 6);

/// Abelian base e_1..e_m extended by t_1..t_{m-n+2} with
/// [t_i, e_1, ..., e_{n-2}, e_{n-2+i}] = e_{n-2+i}; zero product.
/// Basis order e_1..e_m, t_1..t_{m-n+2}. Requires n >= 2, m >= n - 1.
StructAlgebra fixture_torus(std::size_t n = 3, std::size_t m = 3);

StructAlgebra abelian_algebra(std::size_t dim, std::size_t arity);
/// One-dimensional unital algebra e*e = e with zero bracket.
StructAlgebra unital_line(std::size_t arity);
/// Two-dimensional Lie algebra [e1, e2] = e2, zero product.
StructAlgebra lie_plane();
/// Binary Poisson algebra on (1, a, b): 1 is the unit, a, b square to zero,
/// ab = 0 and {a, b} = b.
StructAlgebra poisson_triple();
/// 3-Lie algebra [e1, e2, e3] = e1 with zero product. No product with
/// basis-vector values makes it Poisson, so it stays zero.
StructAlgebra solvable_3lie();
/// 4-dim nilpotent Poisson 3-Lie algebra: [e1, e2, e3] = e4, e1*e1 = e4.
StructAlgebra heisenberg_3lie();
/// 4-dim simple 3-Lie algebra with zero product.
StructAlgebra simple_3lie();

/// Names accepted by named_fixture, e.g. "hypo", "torus", "lie-plane".
std::vector<std::string> fixture_names();
/// "hypo", "hypo:<n>:<m>", "torus", "torus:<n>:<m>", "abelian:<d>:<n>", ...
/// Throws std::invalid_argument for unknown names.
StructAlgebra named_fixture(const std::string& name);

}  // namespace pnlie
