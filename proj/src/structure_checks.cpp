#include "pnlie/structure_checks.hpp"

#include <functional>
#include <stdexcept>

namespace pnlie {

namespace {

// k-th term (one-based) of a series, continued past its last computed term.
Subspace term(const SeriesResult& s, std::size_t k) {
    if (k == 0) throw std::invalid_argument("series terms are one-based");
    if (k <= s.terms.size()) return s.terms[k - 1];
    return s.reaches_zero ? Subspace::zero(s.terms.front().ambient()) : s.terms.back();
}

Subspace product_of(const StructAlgebra& p, const std::vector<Subspace>& factors) {
    if (factors.empty()) throw std::invalid_argument("empty product of subspaces");
    Subspace acc = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) acc = subspace_product(p, acc, factors[i]);
    return acc;
}

std::string join(const std::vector<std::size_t>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) out += (i ? "," : "") + std::to_string(values[i]);
    return out;
}

// Non-decreasing tuples of length k with entries in [1, top].
std::vector<std::vector<std::size_t>> sorted_tuples(std::size_t k, std::size_t top) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t)> rec = [&](std::size_t lo) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = lo; v <= top; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(1);
    return out;
}

// Partitions of total into positive parts, non-increasing.
std::vector<std::vector<std::size_t>> partitions(std::size_t total) {
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> cur;
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t left, std::size_t cap) {
        if (left == 0) {
            out.push_back(cur);
            return;
        }
        for (std::size_t v = std::min(left, cap); v >= 1; --v) {
            cur.push_back(v);
            rec(left - v, v);
            cur.pop_back();
        }
    };
    rec(total, total);
    return out;
}

class Recorder {
public:
    explicit Recorder(std::string name) { check_.name = std::move(name); }
    // Returns false once a failure is recorded so loops can stop.
    bool expect(bool ok, const std::string& detail) {
        ++check_.checked;
        if (!ok) {
            check_.holds = false;
            check_.detail = detail;
        }
        return ok;
    }
    PropertyCheck take() && { return std::move(check_); }

private:
    PropertyCheck check_;
};

}  // namespace

bool StructureCheckReport::all() const {
    for (const auto& c : checks) {
        if (!c.holds) return false;
    }
    return true;
}

const PropertyCheck& StructureCheckReport::get(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return c;
    }
    throw std::out_of_range("no property check named " + name);
}

StructureCheckReport check_structure_properties(const StructAlgebra& p, const StructureCheckOptions& options) {
    const std::size_t d = p.dim(), n = p.arity(), top = options.max_power;
    const Subspace all = Subspace::full(d);
    StructureCheckReport report;
    const SeriesResult lower = series(p, all, SeriesKind::LowerCentral);
    const SeriesResult derived = series(p, all, SeriesKind::Derived);

    {
        Recorder r("product_of_powers");
        bool ok = true;
        for (std::size_t i = 1; i <= top && ok; ++i) {
            for (std::size_t j = i; j <= top && ok; ++j) {
                ok = r.expect(term(lower, i + j).contains(subspace_product(p, term(lower, i), term(lower, j))),
                              "i=" + std::to_string(i) + " j=" + std::to_string(j));
            }
        }
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("bracket_of_powers");
        bool ok = true;
        for (std::size_t k = 1; k <= n && ok; ++k) {
            for (const auto& idx : sorted_tuples(k, top)) {
                std::vector<Subspace> slots(n, all);
                std::size_t sum = 0;
                for (std::size_t s = 0; s < k; ++s) {
                    slots[s] = term(lower, idx[s]);
                    sum += idx[s];
                }
                if (!r.expect(term(lower, sum + 2 - k).contains(bracket_span(p, slots)), "i=(" + join(idx) + ")")) {
                    ok = false;
                    break;
                }
            }
        }
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("derived_in_lower_central");
        for (std::size_t i = 1; i <= top; ++i) {
            if (!r.expect(term(lower, std::size_t{1} << (i - 1)).contains(term(derived, i)), "i=" + std::to_string(i))) {
                break;
            }
        }
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("derived_of_derived");
        bool ok = true;
        for (std::size_t i = 1; i <= top && ok; ++i) {
            SeriesResult inner = series(p, term(derived, i), SeriesKind::Derived);
            for (std::size_t j = 1; j <= top; ++j) {
                if (!r.expect(term(inner, j) == term(derived, i + j - 1),
                              "i=" + std::to_string(i) + " j=" + std::to_string(j))) {
                    ok = false;
                    break;
                }
            }
        }
        report.checks.push_back(std::move(r).take());
    }

    std::vector<Subspace> ideals{all};
    auto add_ideal = [&](Subspace s) {
        for (const auto& existing : ideals) {
            if (existing == s) return;
        }
        ideals.push_back(std::move(s));
    };
    if (d > 0) {
        add_ideal(term(lower, 2));
        add_ideal(ideal_closure(p, Subspace::coordinate(d, IndexTuple{0})));
        add_ideal(ideal_closure(p, Subspace::coordinate(d, IndexTuple{d - 1})));
    }

    Recorder embedding("lower_central_embedding");
    Recorder absorbs("bracket_absorbs_power");
    Recorder products("bracket_of_products");
    Recorder products_equal("bracket_of_products_equal");
    bool embedding_ok = true, absorbs_ok = true, products_ok = true, equal_ok = true;
    for (std::size_t which = 0; which < ideals.size(); ++which) {
        const Subspace& ideal = ideals[which];
        const std::string tag = "ideal " + ideal.to_string();
        SeriesResult ideal_lower = series(p, ideal, SeriesKind::LowerCentral);
        SeriesResult assoc = series(p, ideal, SeriesKind::AssocPower);
        SeriesResult brack = series(p, ideal, SeriesKind::BracketPower);

        for (std::size_t k = 1; k <= options.max_embedding && embedding_ok; ++k) {
            SpanBuilder rhs(d);
            for (std::size_t r1 = 0; r1 <= k; ++r1) {
                if (r1 == k) {
                    Subspace power = term(assoc, k);
                    for (const auto& v : power.basis()) rhs.add(v);
                    continue;
                }
                for (const auto& parts : partitions(k - r1)) {
                    std::vector<Subspace> factors;
                    if (r1 > 0) factors.push_back(term(assoc, r1));
                    for (auto r : parts) factors.push_back(term(brack, r));
                    Subspace prod = product_of(p, factors);
                    for (const auto& v : prod.basis()) rhs.add(v);
                }
            }
            embedding_ok =
                embedding.expect(rhs.current().contains(term(ideal_lower, k)), tag + " k=" + std::to_string(k));
        }

        std::vector<Subspace> slots(n, all);
        if (n > 1) slots[1] = ideal;
        for (std::size_t k = 1; k <= top && absorbs_ok; ++k) {
            slots[0] = term(assoc, k + 1);
            Subspace rhs = subspace_product(p, term(assoc, k), term(brack, 2));
            absorbs_ok = absorbs.expect(rhs.contains(bracket_span(p, slots)), tag + " k=" + std::to_string(k));
        }

        for (std::size_t m = 1; m <= 3 && (products_ok || equal_ok); ++m) {
            for (const auto& ks : sorted_tuples(m, 3)) {
                std::vector<Subspace> factors;
                for (auto k : ks) factors.push_back(term(brack, k));
                slots[0] = product_of(p, factors);
                Subspace lhs = bracket_span(p, slots);
                SpanBuilder rhs(d);
                for (std::size_t i = 0; i < m; ++i) {
                    std::vector<Subspace> f = factors;
                    f[i] = term(brack, ks[i] + 1);
                    Subspace prod = product_of(p, f);
                    for (const auto& v : prod.basis()) rhs.add(v);
                }
                const std::string detail = tag + " k=(" + join(ks) + ")";
                if (products_ok) products_ok = products.expect(rhs.current().contains(lhs), detail);
                if (equal_ok) equal_ok = products_equal.expect(rhs.current() == lhs, detail);
            }
        }
    }
    report.checks.push_back(std::move(embedding).take());
    report.checks.push_back(std::move(absorbs).take());
    report.checks.push_back(std::move(products).take());
    report.checks.push_back(std::move(products_equal).take());

    {
        Recorder r("square_derived");
        Subspace pp = subspace_product(p, all, all);
        SeriesResult square = series(p, pp, SeriesKind::Derived);
        for (std::size_t k = 1; k <= top; ++k) {
            if (!r.expect(term(derived, k + 1).contains(term(square, k)), "k=" + std::to_string(k))) break;
        }
        report.checks.push_back(std::move(r).take());
    }

    Classification c = classify(p);
    {
        Recorder r("nilpotent_iff_parts");
        r.expect(c.nilpotent_matches_parts, "nilpotent=" + std::to_string(c.nilpotent));
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("engel");
        r.expect(engel_check(p).all_nilpotent() == c.nilpotent, "nilpotent=" + std::to_string(c.nilpotent));
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("solvable_iff_square");
        r.expect(c.solvable_matches_square, "solvable=" + std::to_string(c.solvable));
        report.checks.push_back(std::move(r).take());
    }
    {
        Recorder r("solvable_iff_parts");
        r.expect(c.solvable == (c.pl_solvable && c.pa_nilpotent), "solvable=" + std::to_string(c.solvable));
        report.checks.push_back(std::move(r).take());
    }
    return report;
}

}  // namespace pnlie
