#include "cli_app.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

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

namespace pnlie::cli {

using Json = nlohmann::ordered_json;

namespace {

// A flag value the user got wrong; reported with exit code 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::uint64_t seed = 0;
    unsigned threads = 1;
    bool quiet = false;
    std::string emit;

    std::vector<std::string> inputs;
    std::string with;
    std::string kind;
    std::vector<std::string> ideal;
    std::string a;
    std::string lambda = "0";
    bool properties = false;

    std::size_t n = 3, m = 2, arity = 3;
    std::string ring = "laurent:euler";
    std::string matrix;
    std::uint64_t samples = 200;
    std::uint64_t trials = 10;
    std::uint64_t budget = 200'000'000;
    std::size_t dim_budget = kDefaultDimensionBudget;
};

struct Context {
    std::string command;
    Options opt;
    bool seed_given = false;
    Json parameters = Json::object();
    Json results = Json::object();
    Json witnesses = Json::array();
    std::string verdict = "pass";
    std::string summary;

    void fail(Json witness) {
        verdict = "fail";
        witnesses.push_back(std::move(witness));
    }
    void require_seed(const std::string& what) const {
        if (!seed_given) throw UsageError(what + " draws random data; pass --seed explicitly");
    }
};

Json one_based(const IndexTuple& t) {
    Json out = Json::array();
    for (auto i : t) out.push_back(i + 1);
    return out;
}

Json subspace_json(const Subspace& s) {
    Json basis = Json::array();
    for (const auto& v : s.basis()) basis.push_back(vector_expression(v));
    return Json{{"dim", s.dim()}, {"basis", basis}};
}

Json axioms_json(const AxiomReport& r) {
    Json out = Json::object();
    for (const AxiomResult* a : r.items()) {
        Json item{{"holds", a->holds}, {"checked", a->checked}};
        if (a->witness) item["witness"] = one_based(*a->witness);
        out[a->name] = item;
    }
    return out;
}

void record_axiom_failures(Context& ctx, const AxiomReport& r, const std::string& where) {
    for (const AxiomResult* a : r.items()) {
        if (a->holds) continue;
        Json w{{"where", where}, {"axiom", a->name}};
        if (a->witness) w["tuple"] = one_based(*a->witness);
        ctx.fail(w);
    }
}

std::string axioms_summary(const AxiomReport& r) {
    std::string out;
    for (const AxiomResult* a : r.items()) out += (out.empty() ? "" : " ") + a->name + "=" + (a->holds ? "ok" : "FAIL");
    return out;
}

StructAlgebra load_algebra(const std::string& spec, const Context& ctx) {
    if (spec.rfind("fixture:", 0) == 0) {
        try {
            return named_fixture(spec.substr(8));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    if (spec == "random") {
        ctx.require_seed("input 'random'");
        return random_poisson_3lie(ctx.opt.seed);
    }
    std::ifstream probe(spec);
    if (!probe) throw UsageError("cannot open algebra file '" + spec + "'");
    return read_algebra_file(spec);
}

std::vector<Vector> parse_vectors(const std::vector<std::string>& items, std::size_t dim) {
    std::vector<Vector> out;
    for (const auto& item : items) {
        std::stringstream ss(item);
        std::string part;
        while (std::getline(ss, part, ';')) {
            if (part.find_first_not_of(" \t") == std::string::npos) continue;
            out.push_back(parse_vector_expression(part, dim));
        }
    }
    return out;
}

void write_emit(const Context& ctx, const std::string& text) {
    if (ctx.opt.emit.empty()) return;
    std::ofstream f(ctx.opt.emit);
    if (!f) throw UsageError("cannot write '" + ctx.opt.emit + "'");
    f << text;
}

void emit_algebra(Context& ctx, const StructAlgebra& p) {
    if (ctx.opt.emit.empty()) return;
    write_emit(ctx, format_algebra(p));
    ctx.results["emitted"] = ctx.opt.emit;
}

Json algebra_shape(const StructAlgebra& p) {
    return Json{{"dim", p.dim()},
                {"arity", p.arity()},
                {"symmetry", p.alternating() ? "alternating" : "general"},
                {"bracket_entries", p.bracket_table().size()},
                {"product_entries", p.product_table().size()}};
}

// ---- ring side ----

RingPreset ring_from(const Context& ctx) {
    try {
        return parse_ring_preset(ctx.opt.ring);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

MatrixBlock matrix_from(Context& ctx, const RingPreset& ring) {
    if (ctx.opt.matrix.empty()) throw UsageError("--matrix is required");
    if (matrix_spec_is_random(ctx.opt.matrix)) ctx.require_seed("--matrix " + ctx.opt.matrix);
    try {
        return matrix_from_spec(ctx.opt.matrix, ctx.opt.n, ctx.opt.m, ring, ctx.opt.seed);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

Json sampled_json(const SampledCheck& c) {
    Json out{{"status", "sampled"}, {"samples", c.samples}, {"nonzero", c.nonzero}};
    return out;
}

Json fundamental_witness_json(const FundamentalWitness& w) {
    Json xs = Json::array(), ys = Json::array();
    for (const auto& x : w.xs) xs.push_back(x.to_string());
    for (const auto& y : w.ys) ys.push_back(y.to_string());
    return Json{{"xs", xs}, {"ys", ys}, {"defect", w.defect.to_string()}};
}

void cmd_construct_jacobian(Context& ctx) {
    RingPreset ring = ring_from(ctx);
    MatrixBlock block = matrix_from(ctx, ring);
    if (block.ring) ring = *block.ring;
    const AdjoinedMatrix& a = block.matrix;
    ctx.parameters = Json{{"n", a.n}, {"m", a.m}, {"ring", ring.name()}, {"matrix", ctx.opt.matrix},
                          {"samples", ctx.opt.samples}};
    DeterminantBracket br(a, ring.derivations(a.rows()));

    Json pi = Json::array();
    for (std::size_t k = 0; k < br.subsets().size(); ++k) {
        pi.push_back(Json{{"subset", one_based(br.subsets()[k])}, {"pi", br.pi_table()[k].to_string()}});
    }
    SampledCheck leib = sample_leibniz(br, ctx.opt.samples, ctx.opt.seed);
    SampledCheck fund = sample_fundamental(br, ctx.opt.samples, ctx.opt.seed);
    ctx.results["matrix"] = format_matrix_block(a, ring);
    ctx.results["scalar"] = a.is_scalar();
    ctx.results["variables"] = a.num_vars();
    ctx.results["pi"] = pi;
    ctx.results["leibniz"] = sampled_json(leib);
    ctx.results["fundamental"] = sampled_json(fund);
    if (leib.witness) ctx.fail(Json{{"identity", "leibniz"}, {"witness", fundamental_witness_json(*leib.witness)}});
    if (fund.witness) ctx.fail(Json{{"identity", "fundamental"}, {"witness", fundamental_witness_json(*fund.witness)}});
    if (!ctx.opt.emit.empty()) {
        write_emit(ctx, format_matrix_block(a, ring));
        ctx.results["emitted"] = ctx.opt.emit;
    }
    ctx.summary = "bracket n=" + std::to_string(a.n) + " m=" + std::to_string(a.m) +
                  ": leibniz nonzero " + std::to_string(leib.nonzero) + "/" + std::to_string(leib.samples) +
                  ", fundamental nonzero " + std::to_string(fund.nonzero) + "/" + std::to_string(fund.samples) +
                  " (sampled)";
}

Json tuple_json(const CriterionTuple& t) {
    return Json{{"I", one_based(t.i)}, {"J", one_based(t.j)}, {"sigma_I", t.sigma_i}, {"sigma_J", t.sigma_j},
                {"t", t.t}};
}

Json criterion_json(const CriterionReport& r) {
    Json out{{"verdict", verdict_name(r.verdict)},
             {"tuples", r.tuples_total},
             {"residual_b_checked", r.residual_b_checked},
             {"residual_b_nonzero", r.residual_b_nonzero},
             {"contracted_checked", r.contracted_checked},
             {"contracted_nonzero", r.contracted_nonzero},
             {"strict_a_checked", r.strict_a_checked},
             {"strict_a_nonzero", r.strict_a_nonzero},
             {"scalar_matrix", r.scalar_matrix},
             {"assumptions_hold", r.assumptions_hold}};
    return out;
}

Json counterexample_json(const CriterionReport& r) {
    const Counterexample& c = *r.counterexample;
    return Json{{"condition", c.condition}, {"tuple", tuple_json(c.tuple)}, {"residual", c.residual},
                {"matrix", r.matrix}};
}

std::string verdict_of(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::BudgetExceeded: return "budget-exceeded";
    }
    return "error";
}

void cmd_criterion_check(Context& ctx) {
    RingPreset ring = ring_from(ctx);
    MatrixBlock block = matrix_from(ctx, ring);
    if (block.ring) ring = *block.ring;
    if (!ring.assumptions_hold()) {
        throw UsageError("ring " + ring.name() + " is not flagged as satisfying the criterion's assumptions; "
                         "use construct-jacobian for a sampled check");
    }
    const AdjoinedMatrix& a = block.matrix;
    ctx.parameters = Json{{"n", a.n}, {"m", a.m}, {"ring", ring.name()}, {"matrix", ctx.opt.matrix},
                          {"budget", ctx.opt.budget}};
    DeterminantBracket br(a, ring.derivations(a.rows()));
    CriterionOptions options;
    options.tuple_budget = ctx.opt.budget;
    options.threads = ctx.opt.threads;
    options.assumptions_hold = true;
    CriterionReport rep = check_criterion(br, options);
    ctx.results = criterion_json(rep);
    ctx.results["matrix"] = format_matrix_block(a, ring);
    ctx.verdict = verdict_of(rep.verdict);
    if (rep.counterexample) ctx.witnesses.push_back(counterexample_json(rep));
    if (rep.verdict == Verdict::Fail && ctx.opt.samples > 0) {
        // Exhibit a concrete fundamental-identity failure alongside the tuple.
        SampledCheck fund = sample_fundamental(br, ctx.opt.samples, ctx.opt.seed);
        ctx.results["fundamental"] = sampled_json(fund);
        if (fund.witness) ctx.witnesses.push_back(Json{{"identity", "fundamental"},
                                                      {"witness", fundamental_witness_json(*fund.witness)}});
    }
    ctx.summary = std::string(ctx.verdict) + ", tuples=" + std::to_string(rep.tuples_total);
}

void cmd_criterion_probe(Context& ctx) {
    const RingPreset ring = ring_from(ctx);
    if (!ring.assumptions_hold()) throw UsageError("criterion-probe needs an Euler ring");
    if (ring.num_vars != 0) throw UsageError("criterion-probe uses n+m variables; pass laurent:euler");
    ctx.parameters = Json{{"n", ctx.opt.n}, {"m", ctx.opt.m}, {"trials", ctx.opt.trials}, {"budget", ctx.opt.budget}};
    CriterionOptions options;
    options.tuple_budget = ctx.opt.budget;
    options.threads = ctx.opt.threads;
    ProbeReport rep = probe_conjecture(ctx.opt.n, ctx.opt.m, ctx.opt.trials, ctx.opt.seed, options);
    ctx.results = Json{{"trials", rep.trials}, {"passed", rep.passed}, {"tuples_per_trial", rep.tuples_per_trial}};
    ctx.verdict = verdict_of(rep.verdict);
    for (const auto& f : rep.failures) {
        Json w{{"matrix", f.matrix}, {"verdict", verdict_name(f.verdict)}};
        if (f.counterexample) w["counterexample"] = counterexample_json(f);
        ctx.witnesses.push_back(w);
    }
    ctx.summary = std::to_string(rep.passed) + "/" + std::to_string(rep.trials) + " trials pass, " +
                  std::to_string(rep.tuples_per_trial) + " tuples each";
}

// ---- finite algebras ----

const std::string& single_input(const Context& ctx) {
    if (ctx.opt.inputs.size() != 1) throw UsageError(ctx.command + " takes exactly one algebra input");
    return ctx.opt.inputs.front();
}

void cmd_verify(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    ctx.parameters = Json{{"input", single_input(ctx)}};
    AxiomReport r = verify_axioms(p, ctx.opt.threads);
    ctx.results["algebra"] = algebra_shape(p);
    ctx.results["axioms"] = axioms_json(r);
    record_axiom_failures(ctx, r, "input");
    emit_algebra(ctx, p);
    ctx.summary = axioms_summary(r);
}

Subspace ideal_option(const Context& ctx, const StructAlgebra& p) {
    if (ctx.opt.ideal.empty()) return Subspace::full(p.dim());
    return Subspace::span(p.dim(), parse_vectors(ctx.opt.ideal, p.dim()));
}

Json series_json(const SeriesResult& s) {
    Json terms = Json::array();
    for (const auto& t : s.terms) terms.push_back(subspace_json(t));
    return Json{{"kind", series_name(s.kind)}, {"reaches_zero", s.reaches_zero}, {"index", s.index}, {"terms", terms}};
}

void cmd_series(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    Subspace ideal = ideal_option(ctx, p);
    std::vector<SeriesKind> kinds;
    if (ctx.opt.kind.empty() || ctx.opt.kind == "all") {
        kinds = {SeriesKind::Derived,    SeriesKind::LowerCentral, SeriesKind::Subalgebra,
                 SeriesKind::AssocPower, SeriesKind::BracketPower, SeriesKind::BracketDerived};
    } else if (auto k = parse_series_kind(ctx.opt.kind)) {
        kinds = {*k};
    } else {
        throw UsageError("unknown series kind '" + ctx.opt.kind + "'");
    }
    ctx.parameters = Json{{"input", single_input(ctx)}, {"ideal", subspace_json(ideal)},
                          {"kind", ctx.opt.kind.empty() ? "all" : ctx.opt.kind}};
    Json all = Json::array();
    for (auto k : kinds) {
        SeriesResult s = series(p, ideal, k);
        ctx.summary += (ctx.summary.empty() ? "" : ", ") + series_name(k) + ":";
        for (const auto& t : s.terms) ctx.summary += " " + std::to_string(t.dim());
        all.push_back(series_json(s));
    }
    ctx.results["series"] = all;
}

Json classification_json(const Classification& c) {
    return Json{{"solvable", c.solvable},
                {"solvability_index", c.solvability_index},
                {"nilpotent", c.nilpotent},
                {"nilpotency_index", c.nilpotency_index},
                {"pa_nilpotent", c.pa_nilpotent},
                {"pa_index", c.pa_index},
                {"pl_solvable", c.pl_solvable},
                {"pl_nilpotent", c.pl_nilpotent},
                {"nilpotent_matches_parts", c.nilpotent_matches_parts},
                {"solvable_matches_square", c.solvable_matches_square}};
}

void cmd_classify(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    ctx.parameters = Json{{"input", single_input(ctx)}, {"properties", ctx.opt.properties}};
    Classification c = classify(p);
    ctx.results["algebra"] = algebra_shape(p);
    ctx.results["classification"] = classification_json(c);
    if (!c.nilpotent_matches_parts) ctx.fail(Json{{"check", "nilpotent_matches_parts"}});
    if (!c.solvable_matches_square) ctx.fail(Json{{"check", "solvable_matches_square"}});
    if (ctx.opt.properties) {
        StructureCheckReport rep = check_structure_properties(p);
        Json props = Json::object();
        for (const auto& check : rep.checks) {
            props[check.name] = Json{{"holds", check.holds}, {"checked", check.checked}};
            if (!check.holds) ctx.fail(Json{{"check", check.name}, {"case", check.detail}});
        }
        ctx.results["properties"] = props;
    }
    ctx.summary = std::string(c.solvable ? "solvable" : "not solvable") + " (index " +
                  std::to_string(c.solvability_index) + "), " + (c.nilpotent ? "nilpotent" : "not nilpotent");
}

bool require_solvable(Context& ctx, const StructAlgebra& p) {
    if (classify(p).solvable) return true;
    ctx.verdict = "fail";
    ctx.witnesses.push_back(Json{{"precondition", "solvable"}, {"holds", false}});
    ctx.summary = "algebra is not solvable";
    return false;
}

void cmd_nilradical(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    ctx.parameters = Json{{"input", single_input(ctx)}};
    if (!require_solvable(ctx, p)) return;
    NilradicalResult r = nilradical(p);
    ctx.results["nilradical"] = subspace_json(r.nilradical);
    ctx.results["bracket_nilradical"] = subspace_json(r.bracket_nilradical);
    ctx.results["agrees"] = r.agrees;
    if (!r.agrees) ctx.fail(Json{{"check", "nilradical equals bracket nilradical"}});
    ctx.summary = "Nil = " + r.nilradical.to_string() + (r.agrees ? "" : ", bracket-only nilradical differs");
}

void cmd_hypo(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    if (ctx.opt.ideal.empty()) throw UsageError("hypo needs --ideal");
    Subspace h = ideal_option(ctx, p);
    ctx.parameters = Json{{"input", single_input(ctx)}, {"ideal", subspace_json(h)}};
    if (!is_ideal(p, h)) {
        ctx.fail(Json{{"check", "is_ideal"}, {"subspace", h.to_string()}});
        ctx.summary = "subspace is not an ideal";
        return;
    }
    SeriesResult lower = series(p, h, SeriesKind::LowerCentral);
    SeriesResult sub = series(p, h, SeriesKind::Subalgebra);
    bool hypo = is_hypo_nilpotent(p, h);
    ctx.results["hypo_nilpotent"] = hypo;
    ctx.results["ideal_series"] = series_json(lower);
    ctx.results["subalgebra_series"] = series_json(sub);
    ExtensionWitnessReport ext = hypo_extension_witnesses(p, h);
    Json ws = Json::array();
    for (const auto& w : ext.witnesses) {
        Json item{{"x", vector_expression(w.x)}};
        item["companions"] = w.companions ? one_based(*w.companions) : Json(nullptr);
        ws.push_back(item);
    }
    ctx.results["extension_witnesses"] = ws;
    ctx.results["all_extensions_found"] = ext.all_found;
    ctx.summary = std::string(hypo ? "hypo-nilpotent" : "not hypo-nilpotent") + ", subalgebra series " +
                  (sub.reaches_zero ? "reaches 0 at step " + std::to_string(sub.index) : "never reaches 0");
}

void cmd_eigenspace(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    if (ctx.opt.a.empty()) throw UsageError("eigenspace needs --a");
    Vector a = parse_vector_expression(ctx.opt.a, p.dim());
    Scalar lambda;
    try {
        lambda = parse_rational(ctx.opt.lambda);
    } catch (const std::exception&) {
        throw UsageError("bad --lambda '" + ctx.opt.lambda + "'");
    }
    ctx.parameters = Json{{"input", single_input(ctx)}, {"a", vector_expression(a)}, {"lambda", to_string(lambda)}};
    Subspace w = generalized_eigenspace(p, a, lambda);
    bool ideal = is_ideal(p, w);
    ctx.results["eigenspace"] = subspace_json(w);
    ctx.results["is_ideal"] = ideal;
    if (!ideal) ctx.fail(Json{{"check", "is_ideal"}, {"subspace", w.to_string()}});
    ctx.summary = "dim " + std::to_string(w.dim()) + (ideal ? ", an ideal" : ", NOT an ideal");
}

void cmd_eigenvector(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    ctx.parameters = Json{{"input", single_input(ctx)}};
    if (!require_solvable(ctx, p)) return;
    auto ev = common_eigenvector(p);
    ctx.results["found"] = ev.has_value();
    if (ev) {
        Json eig = Json::array();
        for (std::size_t k = 0; k < ev->tuples.size(); ++k) {
            if (is_zero(ev->eigenvalues[k])) continue;
            eig.push_back(Json{{"y", one_based(ev->tuples[k])}, {"lambda", to_string(ev->eigenvalues[k])}});
        }
        ctx.results["vector"] = vector_expression(ev->v);
        ctx.results["nonzero_eigenvalues"] = eig;
    }
    auto flag = solvable_flag(p);
    ctx.results["flag_found"] = flag.has_value();
    if (flag) {
        Json steps = Json::array();
        for (const auto& f : *flag) steps.push_back(subspace_json(f));
        ctx.results["flag"] = steps;
    }
    ctx.summary = ev ? "common eigenvector " + vector_expression(ev->v) : "no rational common eigenvector";
}

// ---- constructions ----

void cmd_tensor(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    const std::string kind = ctx.opt.kind.empty() ? "poisson-n" : ctx.opt.kind;
    ctx.parameters = Json{{"input", single_input(ctx)}, {"kind", kind}};
    if (kind == "poisson-n" || kind == "xu") {
        if (ctx.opt.with.empty()) throw UsageError("tensor --kind " + kind + " needs --with");
        StructAlgebra b = load_algebra(ctx.opt.with, ctx);
        ctx.parameters["with"] = ctx.opt.with;
        if (p.dim() * b.dim() > ctx.opt.dim_budget) {
            throw BudgetExceeded("tensor dimension " + std::to_string(p.dim() * b.dim()) + " exceeds budget");
        }
        TensorAlgebra t = kind == "xu" ? xu_tensor(p, b, ctx.opt.threads) : tensor_poisson_n(p, b, ctx.opt.threads);
        ctx.results["algebra"] = algebra_shape(t.algebra);
        ctx.results["axioms"] = axioms_json(t.verification);
        record_axiom_failures(ctx, t.verification, "tensor");
        emit_algebra(ctx, t.algebra);
        ctx.summary = "dim " + std::to_string(t.algebra.dim()) + ": " + axioms_summary(t.verification);
        return;
    }
    if (kind == "leibniz") {
        LeibnizTensorOptions o;
        o.budget = ctx.opt.dim_budget;
        o.seed = ctx.opt.seed;
        o.threads = ctx.opt.threads;
        LeibnizTensorResult r = leibniz_tensor_functor(p, o);
        ctx.results["algebra"] = algebra_shape(r.algebra);
        ctx.results["leibniz_identity"] = Json{{"holds", r.identity.holds},
                                               {"status", r.identity.exhaustive ? "exhaustive" : "sampled"},
                                               {"checked", r.identity.checked}};
        ctx.results["ad_kernel_dim"] = r.ad_kernel.dim();
        ctx.results["kernel_is_ideal"] = r.kernel_is_ideal;
        if (!r.identity.holds) ctx.fail(Json{{"identity", "leibniz"}, {"tuple", one_based(*r.identity.witness)}});
        if (!r.kernel_is_ideal) ctx.fail(Json{{"check", "ad kernel is an ideal"}});
        emit_algebra(ctx, r.algebra);
        ctx.summary = "dim " + std::to_string(r.algebra.dim()) + ", Leibniz identity " +
                      (r.identity.holds ? "holds" : "FAILS") + (r.identity.exhaustive ? "" : " (sampled)");
        return;
    }
    throw UsageError("unknown tensor kind '" + kind + "'");
}

void cmd_quotient_pipeline(Context& ctx) {
    StructAlgebra p = load_algebra(single_input(ctx), ctx);
    const std::string kind = ctx.opt.kind.empty() ? "skew" : ctx.opt.kind;
    ctx.parameters = Json{{"input", single_input(ctx)}, {"kind", kind}};
    if (kind == "skew") {
        ctx.parameters["arity"] = ctx.opt.arity;
        if (p.arity() != 2) throw UsageError("the skew pipeline starts from a binary Poisson algebra");
        const std::size_t d2 = p.dim() * p.dim();
        if (d2 > ctx.opt.dim_budget) throw BudgetExceeded("tensor square dimension " + std::to_string(d2));
        PoissonToNLieResult r = poisson_to_n_lie(p, ctx.opt.arity, ctx.opt.threads);
        const SkewQuotientResult& q = r.quotient;
        ctx.results["tensor"] = Json{{"dim", r.tensor.algebra.dim()}, {"axioms", axioms_json(r.tensor.verification)}};
        ctx.results["iterated"] = Json{{"arity", r.iterated.arity()}, {"axioms", axioms_json(r.iterated_verification)}};
        ctx.results["defects_dim"] = q.defects.dim();
        ctx.results["ideal_dim"] = q.ideal.dim();
        ctx.results["quotient"] = algebra_shape(q.algebra);
        ctx.results["quotient_axioms"] = axioms_json(q.verification);
        record_axiom_failures(ctx, r.tensor.verification, "tensor");
        record_axiom_failures(ctx, q.verification, "quotient");
        emit_algebra(ctx, q.algebra);
        ctx.summary = "quotient dim " + std::to_string(q.algebra.dim()) + ": " + axioms_summary(q.verification);
        return;
    }
    if (kind == "tilde") {
        LeibnizTensorOptions o;
        o.budget = ctx.opt.dim_budget;
        o.seed = ctx.opt.seed;
        o.threads = ctx.opt.threads;
        TildeQuotientResult r = poisson_quotient_tilde(p, o);
        ctx.results["tensor_power_dim"] = r.tensor_power.dim();
        ctx.results["leibniz_identity"] = Json{{"holds", r.identity.holds},
                                               {"status", r.identity.exhaustive ? "exhaustive" : "sampled"}};
        ctx.results["ad_kernel_dim"] = r.ad_kernel.dim();
        ctx.results["symmetric_span_dim"] = r.symmetric_span.dim();
        ctx.results["ideal_dim"] = r.ideal.dim();
        ctx.results["span_in_kernel"] = r.span_in_kernel;
        ctx.results["ideal_in_kernel"] = r.ideal_in_kernel;
        ctx.results["quotient"] = algebra_shape(r.algebra);
        ctx.results["quotient_axioms"] = axioms_json(r.verification);
        if (!r.identity.holds) ctx.fail(Json{{"identity", "leibniz"}, {"tuple", one_based(*r.identity.witness)}});
        if (!r.span_in_kernel) ctx.fail(Json{{"check", "symmetric span in ad kernel"}});
        if (!r.ideal_in_kernel) ctx.fail(Json{{"check", "ideal in ad kernel"}});
        record_axiom_failures(ctx, r.verification, "quotient");
        emit_algebra(ctx, r.algebra);
        ctx.summary = "quotient dim " + std::to_string(r.algebra.dim()) + ": " + axioms_summary(r.verification);
        return;
    }
    throw UsageError("unknown pipeline kind '" + kind + "'");
}

void cmd_fixtures(Context& ctx) {
    if (ctx.opt.inputs.size() > 1) throw UsageError("fixtures takes at most one name");
    if (ctx.opt.inputs.empty()) {
        Json names = Json::array();
        for (const auto& n : fixture_names()) names.push_back(n);
        ctx.results["fixtures"] = names;
        ctx.summary = std::to_string(names.size()) + " fixtures";
        return;
    }
    std::string name = ctx.opt.inputs.front();
    if (name.rfind("fixture:", 0) == 0) name = name.substr(8);
    ctx.parameters = Json{{"name", name}};
    StructAlgebra p = load_algebra("fixture:" + name, ctx);
    ctx.results["algebra"] = algebra_shape(p);
    ctx.results["text"] = format_algebra(p);
    emit_algebra(ctx, p);
    ctx.summary = name + ": dim " + std::to_string(p.dim()) + ", arity " + std::to_string(p.arity());
}

int exit_code_for(const std::string& verdict) {
    if (verdict == "pass") return kPass;
    if (verdict == "fail") return kMathFail;
    if (verdict == "budget-exceeded") return kBudget;
    return kUsage;
}

Json base_report(const Context& ctx, const std::vector<std::string>& args) {
    Json argv = Json::array();
    // Thread count and output flags do not change the result, so they stay
    // out of the echoed command line.
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--threads" || args[i] == "--emit") {
            ++i;
            continue;
        }
        if (args[i].rfind("--threads=", 0) == 0 || args[i].rfind("--emit=", 0) == 0 || args[i] == "--quiet" ||
            args[i] == "-q") {
            continue;
        }
        argv.push_back(args[i]);
    }
    return Json{{"schema", kReportSchema},
                {"version", kToolVersion},
                {"command", Json{{"name", ctx.command}, {"argv", argv}}},
                {"seed", ctx.opt.seed}};
}

}  // namespace

Json report_body(const Json& report) {
    Json body = report;
    body.erase("runtime");
    return body;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Context ctx;
    Options& o = ctx.opt;
    CLI::App app{"Poisson n-Lie algebra toolkit", "pnlie"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::map<std::string, std::function<void(Context&)>> handlers;
    std::vector<std::pair<CLI::App*, CLI::Option*>> seed_options;
    auto add = [&](const std::string& name, const std::string& about, std::function<void(Context&)> fn) {
        CLI::App* sub = app.add_subcommand(name, about);
        seed_options.emplace_back(sub, sub->add_option("--seed", o.seed, "seed for every random choice (default 0)"));
        sub->add_option("--threads", o.threads, "worker threads")->check(CLI::Range(1u, 256u));
        sub->add_flag("-q,--quiet", o.quiet, "no summary on stderr");
        handlers[name] = std::move(fn);
        return sub;
    };
    auto algebra_input = [&](CLI::App* sub, bool required = true) {
        auto* opt = sub->add_option("input", o.inputs, "fixture:<name>, random, or an algebra file");
        if (required) opt->required();
    };
    auto bracket_options = [&](CLI::App* sub) {
        sub->add_option("--n", o.n, "bracket arity")->check(CLI::Range(2, 12));
        sub->add_option("--m", o.m, "adjoined columns")->check(CLI::Range(0, 10));
        sub->add_option("--ring", o.ring, "ring preset")->capture_default_str();
        sub->add_option("--budget", o.budget, "tuple budget")->capture_default_str();
    };

    {
        auto* s = add("construct-jacobian", "build a determinant bracket and sample its identities",
                      cmd_construct_jacobian);
        bracket_options(s);
        s->add_option("--matrix", o.matrix, "matrix spec")->required();
        s->add_option("--samples", o.samples, "sampled tuples per identity")->capture_default_str();
        s->add_option("--emit", o.emit, "write the matrix block here");
    }
    {
        auto* s = add("criterion-check", "exhaustive criterion check for one matrix", cmd_criterion_check);
        bracket_options(s);
        s->add_option("--matrix", o.matrix, "matrix spec")->required();
        s->add_option("--samples", o.samples, "on failure, sampled tuples searched for a defect witness");
    }
    {
        auto* s = add("criterion-probe", "criterion check on seeded random scalar matrices", cmd_criterion_probe);
        bracket_options(s);
        s->add_option("--trials", o.trials, "number of matrices")->capture_default_str();
    }
    {
        auto* s = add("verify", "check the Poisson n-Lie axioms", cmd_verify);
        algebra_input(s);
        s->add_option("--emit", o.emit, "write the algebra here");
    }
    {
        auto* s = add("series", "derived, lower central and related series", cmd_series);
        algebra_input(s);
        s->add_option("--kind", o.kind, "derived, lower_central, subalg, assoc_power, bracket_power, "
                                        "bracket_derived or all");
        s->add_option("--ideal", o.ideal, "spanning vectors, e.g. 'e1; e2 + e3' (default: everything)");
    }
    {
        auto* s = add("classify", "solvability and nilpotency", cmd_classify);
        algebra_input(s);
        s->add_flag("--properties", o.properties, "also run the series inclusion checks");
    }
    {
        auto* s = add("nilradical", "maximal nilpotent ideal of a solvable algebra", cmd_nilradical);
        algebra_input(s);
    }
    {
        auto* s = add("hypo", "hypo-nilpotency of an ideal", cmd_hypo);
        algebra_input(s);
        s->add_option("--ideal", o.ideal, "spanning vectors")->required();
    }
    {
        auto* s = add("eigenspace", "generalized eigenspace of a multiplication operator", cmd_eigenspace);
        algebra_input(s);
        s->add_option("--a", o.a, "element, e.g. 'e1 + 2*e3'")->required();
        s->add_option("--lambda", o.lambda, "eigenvalue")->capture_default_str();
    }
    {
        auto* s = add("eigenvector", "common eigenvector and ideal flag of a solvable algebra", cmd_eigenvector);
        algebra_input(s);
    }
    {
        auto* s = add("tensor", "tensor constructions", cmd_tensor);
        algebra_input(s);
        s->add_option("--kind", o.kind, "poisson-n, xu or leibniz")->capture_default_str();
        s->add_option("--with", o.with, "second factor");
        s->add_option("--dim-budget", o.dim_budget, "largest output dimension")->capture_default_str();
        s->add_option("--emit", o.emit, "write the output algebra here");
    }
    {
        auto* s = add("quotient-pipeline", "skew-defect or symmetrization quotients", cmd_quotient_pipeline);
        algebra_input(s);
        s->add_option("--kind", o.kind, "skew or tilde");
        s->add_option("--arity", o.arity, "arity of the iterated bracket")->check(CLI::Range(2, 6));
        s->add_option("--dim-budget", o.dim_budget, "largest intermediate dimension")->capture_default_str();
        s->add_option("--emit", o.emit, "write the quotient algebra here");
    }
    {
        auto* s = add("fixtures", "list fixtures or print one", cmd_fixtures);
        algebra_input(s, false);
        s->add_option("--emit", o.emit, "write the fixture here");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        err << "pnlie: " << e.what() << "\n";
        Json report{{"schema", kReportSchema}, {"version", kToolVersion}, {"verdict", "error"},
                    {"error", Json{{"kind", "usage"}, {"message", e.what()}}}};
        out << report.dump(2) << "\n";
        return kUsage;
    }

    CLI::App* chosen = app.get_subcommands().front();
    ctx.command = chosen->get_name();
    for (auto& [sub, opt] : seed_options) {
        if (sub == chosen) ctx.seed_given = opt->count() > 0;
    }

    Json report = base_report(ctx, args);
    auto start = std::chrono::steady_clock::now();
    Json error;
    try {
        handlers.at(ctx.command)(ctx);
    } catch (const ParseError& e) {
        ctx.verdict = "error";
        error = Json{{"kind", "parse"}, {"message", e.what()}, {"line", e.line()}, {"column", e.column()}};
    } catch (const UsageError& e) {
        ctx.verdict = "error";
        error = Json{{"kind", "usage"}, {"message", e.what()}};
    } catch (const BudgetExceeded& e) {
        ctx.verdict = "budget-exceeded";
        error = Json{{"kind", "budget"}, {"message", e.what()}};
    } catch (const std::exception& e) {
        ctx.verdict = "error";
        error = Json{{"kind", "input"}, {"message", e.what()}};
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    report["parameters"] = ctx.parameters;
    report["verdict"] = ctx.verdict;
    report["results"] = ctx.results;
    report["witnesses"] = ctx.witnesses;
    if (!error.is_null()) report["error"] = error;
    report["runtime"] = Json{{"threads", o.threads}, {"wall_seconds", seconds}};
    out << report.dump(2) << "\n";

    if (!error.is_null()) {
        err << "pnlie " << ctx.command << ": " << error["message"].get<std::string>() << "\n";
    } else if (!o.quiet) {
        err << "pnlie " << ctx.command << ": " << ctx.verdict;
        if (!ctx.summary.empty()) err << ", " << ctx.summary;
        err << "\n";
    }
    return exit_code_for(ctx.verdict);
}

}  // namespace pnlie::cli
