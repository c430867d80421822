#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli_app.hpp"
#include "pnlie/algebra_io.hpp"
#include "pnlie/axioms.hpp"
#include "pnlie/constructions.hpp"
#include "pnlie/criterion.hpp"
#include "pnlie/expr_parser.hpp"
#include "pnlie/fixtures.hpp"
#include "pnlie/ring_presets.hpp"
#include "pnlie/solvable.hpp"
#include "pnlie/structure.hpp"
#include "pnlie/structure_checks.hpp"

namespace py = pybind11;
using namespace pnlie;

namespace {

// Vectors cross the boundary as expressions like "e1 - 1/2*e3".
std::vector<std::string> to_strings(const Subspace& s) {
    std::vector<std::string> out;
    for (const auto& v : s.basis()) out.push_back(vector_expression(v));
    return out;
}

Subspace span_of(const StructAlgebra& p, const std::vector<std::string>& vectors) {
    std::vector<Vector> vs;
    for (const auto& text : vectors) vs.push_back(parse_vector_expression(text, p.dim()));
    return Subspace::span(p.dim(), vs);
}

py::object witness(const std::optional<IndexTuple>& t) {
    if (!t) return py::none();
    py::list out;
    for (auto i : *t) out.append(i + 1);
    return out;
}

py::dict axioms_dict(const AxiomReport& r) {
    py::dict out;
    for (const AxiomResult* a : r.items()) {
        py::dict item;
        item["holds"] = a->holds;
        item["checked"] = a->checked;
        item["witness"] = witness(a->witness);
        out[py::str(a->name)] = item;
    }
    return out;
}

py::dict criterion_dict(const CriterionReport& r) {
    py::dict out;
    out["verdict"] = std::string(verdict_name(r.verdict));
    out["tuples"] = r.tuples_total;
    out["residual_b_nonzero"] = r.residual_b_nonzero;
    out["contracted_nonzero"] = r.contracted_nonzero;
    out["matrix"] = r.matrix;
    if (r.counterexample) {
        py::dict c;
        c["condition"] = r.counterexample->condition;
        c["residual"] = r.counterexample->residual;
        out["counterexample"] = c;
    } else {
        out["counterexample"] = py::none();
    }
    return out;
}

class Bracket {
public:
    Bracket(std::size_t n, std::size_t m, const std::string& matrix, const std::string& ring, std::uint64_t seed)
        : ring_(parse_ring_preset(ring)) {
        MatrixBlock block = matrix_from_spec(matrix, n, m, ring_, seed);
        if (block.ring) ring_ = *block.ring;
        br_.emplace(block.matrix, ring_.derivations(block.matrix.rows()));
    }

    std::string evaluate(const std::vector<std::string>& xs, bool expanded) const {
        return (*br_)(polys(xs), expanded ? BracketMethod::Expanded : BracketMethod::Full).to_string();
    }
    std::string fundamental_defect(const std::vector<std::string>& xs, const std::vector<std::string>& ys) const {
        return br_->fundamental_defect(polys(xs), polys(ys)).to_string();
    }
    py::dict criterion(unsigned threads, std::uint64_t budget) const {
        CriterionOptions o;
        o.threads = threads;
        o.tuple_budget = budget;
        o.assumptions_hold = ring_.assumptions_hold();
        return criterion_dict(check_criterion(*br_, o));
    }
    py::dict sample_fundamental(std::uint64_t samples, std::uint64_t seed) const {
        SampledCheck c = pnlie::sample_fundamental(*br_, samples, seed);
        py::dict out;
        out["samples"] = c.samples;
        out["nonzero"] = c.nonzero;
        return out;
    }
    std::string matrix_block() const { return format_matrix_block(br_->matrix(), ring_); }
    std::size_t arity() const { return br_->arity(); }
    std::size_t num_vars() const { return br_->num_vars(); }

private:
    std::vector<LaurentPolynomial> polys(const std::vector<std::string>& texts) const {
        std::vector<LaurentPolynomial> out;
        for (const auto& t : texts) out.push_back(parse_polynomial(t, br_->num_vars()));
        return out;
    }

    RingPreset ring_;
    std::optional<DeterminantBracket> br_;
};

}  // namespace

PYBIND11_MODULE(_pnlie, m) {
    m.doc() = "Exact Poisson n-Lie algebra computations";
    m.attr("__version__") = cli::kToolVersion;

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);

    py::class_<StructAlgebra>(m, "Algebra")
        .def_static("from_text", [](const std::string& text) { return parse_algebra(text); })
        .def_static("fixture", &named_fixture, py::arg("name"))
        .def_static("random", &random_poisson_3lie, py::arg("seed"), py::arg("max_dim") = 6)
        .def("to_text", &format_algebra)
        .def_property_readonly("dim", &StructAlgebra::dim)
        .def_property_readonly("arity", &StructAlgebra::arity)
        .def_property_readonly("alternating", &StructAlgebra::alternating)
        .def("bracket", [](const StructAlgebra& p, const std::vector<std::size_t>& idx) {
            IndexTuple zero_based;
            for (auto i : idx) zero_based.push_back(i - 1);
            return vector_expression(p.bracket_basis(zero_based));
        }, "bracket of basis vectors, one-based")
        .def("product", [](const StructAlgebra& p, std::size_t i, std::size_t j) {
            return vector_expression(p.product_basis(i - 1, j - 1));
        })
        .def("__eq__", [](const StructAlgebra& a, const StructAlgebra& b) { return a == b; })
        .def("__repr__", [](const StructAlgebra& p) {
            return "<Algebra dim=" + std::to_string(p.dim()) + " arity=" + std::to_string(p.arity()) + ">";
        });

    m.def("fixture_names", &fixture_names);
    m.def("verify", [](const StructAlgebra& p, unsigned threads) { return axioms_dict(verify_axioms(p, threads)); },
          py::arg("algebra"), py::arg("threads") = 1);
    m.def("classify", [](const StructAlgebra& p) {
        Classification c = classify(p);
        py::dict out;
        out["solvable"] = c.solvable;
        out["solvability_index"] = c.solvability_index;
        out["nilpotent"] = c.nilpotent;
        out["nilpotency_index"] = c.nilpotency_index;
        out["pa_nilpotent"] = c.pa_nilpotent;
        out["pl_solvable"] = c.pl_solvable;
        out["pl_nilpotent"] = c.pl_nilpotent;
        return out;
    });
    m.def("series", [](const StructAlgebra& p, const std::string& kind, const std::vector<std::string>& ideal) {
        auto k = parse_series_kind(kind);
        if (!k) throw py::value_error("unknown series kind '" + kind + "'");
        Subspace start = ideal.empty() ? Subspace::full(p.dim()) : span_of(p, ideal);
        std::vector<std::vector<std::string>> out;
        for (const auto& t : series(p, start, *k).terms) out.push_back(to_strings(t));
        return out;
    }, py::arg("algebra"), py::arg("kind"), py::arg("ideal") = std::vector<std::string>{});
    m.def("is_ideal", [](const StructAlgebra& p, const std::vector<std::string>& vs) {
        return is_ideal(p, span_of(p, vs));
    });
    m.def("is_hypo_nilpotent", [](const StructAlgebra& p, const std::vector<std::string>& vs) {
        return is_hypo_nilpotent(p, span_of(p, vs));
    });
    m.def("nilradical", [](const StructAlgebra& p) { return to_strings(nilradical(p).nilradical); });
    m.def("common_eigenvector", [](const StructAlgebra& p) -> py::object {
        auto ev = common_eigenvector(p);
        if (!ev) return py::none();
        return py::str(vector_expression(ev->v));
    });
    m.def("generalized_eigenspace", [](const StructAlgebra& p, const std::string& a, const std::string& lambda) {
        return to_strings(generalized_eigenspace(p, parse_vector_expression(a, p.dim()), parse_rational(lambda)));
    }, py::arg("algebra"), py::arg("a"), py::arg("lam") = "0");
    m.def("structure_properties", [](const StructAlgebra& p) {
        py::dict out;
        for (const auto& c : check_structure_properties(p).checks) out[py::str(c.name)] = c.holds;
        return out;
    });

    m.def("tensor_poisson_n", [](const StructAlgebra& p, const StructAlgebra& b, unsigned threads) {
        return tensor_poisson_n(p, b, threads).algebra;
    }, py::arg("p"), py::arg("b"), py::arg("threads") = 1);
    m.def("xu_tensor", [](const StructAlgebra& a, const StructAlgebra& b, unsigned threads) {
        return xu_tensor(a, b, threads).algebra;
    }, py::arg("p1"), py::arg("p2"), py::arg("threads") = 1);
    m.def("poisson_to_n_lie", [](const StructAlgebra& p, std::size_t n) {
        return poisson_to_n_lie(p, n).quotient.algebra;
    }, "skew-defect quotient of the iterated bracket on the Xu square");
    m.def("leibniz_tensor", [](const StructAlgebra& l, std::uint64_t seed, unsigned threads) {
        LeibnizTensorOptions o;
        o.seed = seed;
        o.threads = threads;
        LeibnizTensorResult r = leibniz_tensor_functor(l, o);
        py::dict out;
        out["algebra"] = r.algebra;
        out["identity_holds"] = r.identity.holds;
        out["exhaustive"] = r.identity.exhaustive;
        out["ad_kernel_dim"] = r.ad_kernel.dim();
        out["kernel_is_ideal"] = r.kernel_is_ideal;
        return out;
    }, py::arg("algebra"), py::arg("seed") = 0, py::arg("threads") = 1);
    m.def("poisson_quotient_tilde", [](const StructAlgebra& p) {
        TildeQuotientResult r = poisson_quotient_tilde(p);
        py::dict out;
        out["algebra"] = r.algebra;
        out["ideal_in_kernel"] = r.ideal_in_kernel;
        out["verified"] = r.verification.all();
        return out;
    });

    py::class_<Bracket>(m, "JacobianBracket")
        .def(py::init<std::size_t, std::size_t, const std::string&, const std::string&, std::uint64_t>(),
             py::arg("n"), py::arg("m"), py::arg("matrix"), py::arg("ring") = "laurent:euler", py::arg("seed") = 0)
        .def("__call__", &Bracket::evaluate, py::arg("xs"), py::arg("expanded") = false)
        .def("fundamental_defect", &Bracket::fundamental_defect)
        .def("criterion", &Bracket::criterion, py::arg("threads") = 1, py::arg("budget") = 200'000'000)
        .def("sample_fundamental", &Bracket::sample_fundamental, py::arg("samples") = 100, py::arg("seed") = 0)
        .def("matrix_block", &Bracket::matrix_block)
        .def_property_readonly("arity", &Bracket::arity)
        .def_property_readonly("num_vars", &Bracket::num_vars);

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, "runs a command line in-process; returns (exit code, report, stderr text)");
}
