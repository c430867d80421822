#include "pnlie/fixtures.hpp"

#include <sstream>
#include <stdexcept>

namespace pnlie {

namespace {

Vector unit(std::size_t d, std::size_t one_based) { return basis_vector(d, one_based - 1); }

IndexTuple zero_based(std::initializer_list<std::size_t> one_based) {
    IndexTuple out;
    for (auto i : one_based) out.push_back(i - 1);
    return out;
}

std::vector<std::size_t> parse_params(const std::string& rest) {
    std::vector<std::size_t> out;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ':')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long v = std::stoul(item, &pos);
        if (pos != item.size()) throw std::invalid_argument("bad fixture parameter '" + item + "'");
        out.push_back(v);
    }
    return out;
}

}  // namespace

StructAlgebra fixture_hypo(std::size_t n, std::size_t m) {
    if (n < 4 || m < n) throw std::invalid_argument("fixture_hypo needs n >= 4 and m >= n");
    const std::size_t d = m + 1;
    StructAlgebra p(d, n);
    for (std::size_t i = 1; i <= m - n + 1; ++i) {
        IndexTuple idx{i - 1};
        for (std::size_t j = m - n + 2; j <= m; ++j) idx.push_back(j - 1);
        p.set_bracket(idx, unit(d, i));
    }
    p.set_product(m - n + 1, m - n + 2, unit(d, m + 1));
    return p;
}

StructAlgebra fixture_torus(std::size_t n, std::size_t m) {
    if (n < 2 || m + 1 < n) throw std::invalid_argument("fixture_torus needs n >= 2 and m >= n - 1");
    const std::size_t q = m + 2 - n, d = m + q;
    StructAlgebra p(d, n);
    for (std::size_t i = 1; i <= q; ++i) {
        IndexTuple idx{m + i - 1};
        for (std::size_t j = 1; j <= n - 2; ++j) idx.push_back(j - 1);
        idx.push_back(n - 2 + i - 1);
        p.set_bracket(idx, unit(d, n - 2 + i));
    }
    return p;
}

StructAlgebra abelian_algebra(std::size_t dim, std::size_t arity) { return StructAlgebra(dim, arity); }

StructAlgebra unital_line(std::size_t arity) {
    StructAlgebra p(1, arity);
    p.set_product(0, 0, unit(1, 1));
    return p;
}

StructAlgebra lie_plane() {
    StructAlgebra p(2, 2);
    p.set_bracket(zero_based({1, 2}), unit(2, 2));
    return p;
}

StructAlgebra poisson_triple() {
    StructAlgebra p(3, 2);
    for (std::size_t i = 1; i <= 3; ++i) p.set_product(0, i - 1, unit(3, i));
    p.set_bracket(zero_based({2, 3}), unit(3, 3));
    return p;
}

StructAlgebra solvable_3lie() {
    StructAlgebra p(3, 3);
    p.set_bracket(zero_based({1, 2, 3}), unit(3, 1));
    return p;
}

StructAlgebra heisenberg_3lie() {
    StructAlgebra p(4, 3);
    p.set_bracket(zero_based({1, 2, 3}), unit(4, 4));
    p.set_product(0, 0, unit(4, 4));
    return p;
}

StructAlgebra simple_3lie() {
    // [e_1..^e_i..e_4] = (-1)^i e_i
    StructAlgebra p(4, 3);
    for (std::size_t i = 1; i <= 4; ++i) {
        IndexTuple idx;
        for (std::size_t j = 1; j <= 4; ++j) {
            if (j != i) idx.push_back(j - 1);
        }
        Vector v = unit(4, i);
        if (i % 2 == 1) v[i - 1] = -1;
        p.set_bracket(idx, v);
    }
    return p;
}

std::vector<std::string> fixture_names() {
    return {"hypo", "torus", "abelian", "unital-line", "lie-plane", "poisson-triple", "solvable-3lie", "heisenberg-3lie",
            "simple-3lie"};
}

StructAlgebra named_fixture(const std::string& spec) {
    auto colon = spec.find(':');
    std::string name = spec.substr(0, colon);
    auto params = colon == std::string::npos ? std::vector<std::size_t>{} : parse_params(spec.substr(colon + 1));
    auto want = [&](std::size_t count) {
        if (params.size() != count && !params.empty()) {
            throw std::invalid_argument("fixture '" + name + "' takes " + std::to_string(count) + " parameters");
        }
    };
    if (name == "hypo") {
        want(2);
        return params.empty() ? fixture_hypo() : fixture_hypo(params[0], params[1]);
    }
    if (name == "torus") {
        want(2);
        return params.empty() ? fixture_torus() : fixture_torus(params[0], params[1]);
    }
    if (name == "abelian") {
        want(2);
        return params.empty() ? abelian_algebra(3, 3) : abelian_algebra(params[0], params[1]);
    }
    if (name == "unital-line") {
        want(1);
        return unital_line(params.empty() ? 3 : params[0]);
    }
    if (!params.empty()) throw std::invalid_argument("fixture '" + name + "' takes no parameters");
    if (name == "lie-plane") return lie_plane();
    if (name == "poisson-triple") return poisson_triple();
    if (name == "solvable-3lie") return solvable_3lie();
    if (name == "heisenberg-3lie") return heisenberg_3lie();
    if (name == "simple-3lie") return simple_3lie();
    throw std::invalid_argument("unknown fixture '" + name + "'");
}

}  // namespace pnlie
