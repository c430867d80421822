// Acceptance run: one PASS/FAIL line per criterion on stdout, optional JSON
// report without timings (for comparing runs across thread counts).

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "cli_app.hpp"
#include "pnlie/algebra_io.hpp"
#include "pnlie/axioms.hpp"
#include "pnlie/constructions.hpp"
#include "pnlie/criterion.hpp"
#include "pnlie/fixtures.hpp"
#include "pnlie/ring_presets.hpp"
#include "pnlie/solvable.hpp"
#include "pnlie/structure.hpp"
#include "pnlie/structure_checks.hpp"

using namespace pnlie;
using Json = nlohmann::ordered_json;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
    std::size_t failures = 0;
    Json data = Json::object();

    // The detail keeps the first failure; later ones are only counted.
    void require(bool ok, const std::string& what) {
        if (ok) return;
        if (failures++ == 0) detail = what;
        pass = false;
    }
};

struct Criterion {
    int id;
    std::string name;
    std::function<Outcome(unsigned)> run;
};

Subspace coords(std::size_t d, std::initializer_list<std::size_t> one_based) {
    IndexTuple idx;
    for (auto i : one_based) idx.push_back(i - 1);
    return Subspace::coordinate(d, idx);
}

DeterminantBracket euler_bracket(const AdjoinedMatrix& a) {
    return DeterminantBracket(a, DerivationFamily::euler(a.num_vars(), a.rows()));
}

Outcome expansion_oracle(unsigned) {
    Outcome out;
    std::size_t total = 0;
    for (auto [n, m] : std::vector<std::pair<std::size_t, std::size_t>>{{2, 1}, {3, 1}, {3, 2}, {4, 2}}) {
        const std::size_t v = n + m;
        for (std::uint64_t k = 0; k < 200; ++k) {
            const std::uint64_t seed = 1000 * n + 100 * m + k;
            std::mt19937_64 rng(seed);
            AdjoinedMatrix a(n, m, v);
            for (std::size_t r = 0; r < v; ++r) {
                for (std::size_t c = 0; c < m; ++c) a.a(r, c) = random_laurent_polynomial(v, rng(), 2);
            }
            DeterminantBracket br = euler_bracket(a);
            SamplePool pool(v, seed);
            std::uint64_t box = 1;
            for (std::size_t i = 0; i < v; ++i) box *= 5;
            std::vector<LaurentPolynomial> xs;
            for (std::size_t i = 0; i < n; ++i) xs.push_back(pool.box_monomial(rng() % box));
            out.require(br(xs, BracketMethod::Full) == br(xs, BracketMethod::Expanded),
                        "mismatch at n=" + std::to_string(n) + " m=" + std::to_string(m) + " seed=" +
                            std::to_string(seed));
            ++total;
        }
    }
    out.data["inputs"] = total;
    if (out.pass) out.detail = std::to_string(total) + " seeded monomial inputs, full == expanded";
    return out;
}

Outcome scalar_batch(Outcome& out, std::size_t n, std::size_t m, std::uint64_t count, unsigned threads) {
    CriterionOptions opts;
    opts.threads = threads;
    std::uint64_t tuples = 0;
    for (std::uint64_t seed = 0; seed < count; ++seed) {
        CriterionReport r = check_criterion(euler_bracket(random_scalar_matrix(n, m, n + m, seed)), opts);
        out.require(r.verdict == Verdict::Pass && r.residual_b_nonzero == 0 && r.contracted_nonzero == 0,
                    "M_{" + std::to_string(n + m) + "," + std::to_string(m) + "} seed " + std::to_string(seed) +
                        ": " + verdict_name(r.verdict));
        tuples += r.tuples_total;
    }
    const std::string key = "n" + std::to_string(n) + "_m" + std::to_string(m);
    out.data[key] = Json{{"matrices", count}, {"tuples", tuples}};
    return out;
}

Outcome scalar_n3(unsigned threads) {
    Outcome out;
    scalar_batch(out, 3, 2, 100, threads);
    if (out.pass) {
        out.detail = "100 matrices in M_{5,2}, " + std::to_string(out.data["n3_m2"]["tuples"].get<std::uint64_t>()) +
                     " tuples, all residuals zero";
    }
    return out;
}

Outcome scalar_n4(unsigned threads) {
    Outcome out;
    scalar_batch(out, 4, 2, 25, threads);
    scalar_batch(out, 4, 3, 25, threads);
    if (out.pass) {
        out.detail = "25 in M_{6,2} and 25 in M_{7,3}, " +
                     std::to_string(out.data["n4_m2"]["tuples"].get<std::uint64_t>() +
                                    out.data["n4_m3"]["tuples"].get<std::uint64_t>()) +
                     " tuples, all residuals zero";
    }
    return out;
}

Outcome examples(unsigned threads) {
    Outcome out;
    const std::size_t n = 3, m = 2;
    RingPreset ring;
    CriterionOptions opts;
    opts.threads = threads;
    std::uint64_t samples = 0;
    for (const char* kind : {"derivative:random", "identity-block:random"}) {
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            AdjoinedMatrix a = matrix_from_spec(kind, n, m, ring, seed).matrix;
            DeterminantBracket br = euler_bracket(a);
            CriterionReport r = check_criterion(br, opts);
            out.require(r.verdict == Verdict::Pass, std::string(kind) + " seed " + std::to_string(seed) +
                                                        " criterion " + verdict_name(r.verdict));
            SampledCheck f = sample_fundamental(br, 200, seed);
            out.require(f.nonzero == 0, std::string(kind) + " seed " + std::to_string(seed) +
                                            " nonzero fundamental defect");
            samples += f.samples;
        }
    }
    out.data["sampled_tuples"] = samples;
    if (out.pass) out.detail = "10 matrices pass the criterion; fundamental defect zero on " +
                               std::to_string(samples) + " sampled tuples";
    return out;
}

Outcome negative_control(unsigned threads) {
    Outcome out;
    AdjoinedMatrix a = cyclic_column_matrix(2);
    DeterminantBracket br = euler_bracket(a);
    CriterionOptions opts;
    opts.threads = threads;
    CriterionReport r = check_criterion(br, opts);
    out.require(r.verdict == Verdict::Fail && r.counterexample.has_value(), "criterion did not fail");
    SampledCheck f = sample_fundamental(br, 60, 0);
    out.require(f.witness.has_value(), "no fundamental-identity witness found");
    if (f.witness) {
        LaurentPolynomial again = br.fundamental_defect(f.witness->xs, f.witness->ys);
        out.require(!again.is_zero() && again == f.witness->defect, "witness does not reproduce");
        out.data["defect"] = again.to_string();
    }
    if (r.counterexample) out.data["residual"] = r.counterexample->residual;
    // The same check passes once the column is a derivative column.
    out.require(check_criterion(euler_bracket(matrix_from_spec("derivative:t1*t2*t3", 2, 1, {}, 0).matrix), opts)
                        .verdict == Verdict::Pass,
                "derivative column did not pass");
    if (out.pass) out.detail = "A=(t2,t3,t1): criterion fails and a nonzero fundamental defect is exhibited";
    return out;
}

Outcome grassmann_plucker(unsigned) {
    Outcome out;
    std::mt19937_64 rng(2024);
    auto vec = [&](std::size_t len) {
        std::vector<Scalar> v;
        for (std::size_t i = 0; i < len; ++i) {
            v.push_back(make_rational(static_cast<long>(rng() % 21) - 10, static_cast<long>(rng() % 4) + 1));
        }
        return v;
    };
    for (std::size_t n : {3, 4, 5}) {
        for (int trial = 0; trial < 1000; ++trial) {
            std::vector<std::vector<Scalar>> e, f;
            for (std::size_t i = 0; i < n; ++i) e.push_back(vec(n - 1));
            for (std::size_t i = 2; i < n; ++i) f.push_back(vec(n - 1));
            out.require(grassmann_plucker_defect(e, f) == 0, "nonzero at n=" + std::to_string(n));
        }
    }
    if (out.pass) out.detail = "3000 inputs (1000 each for n=3,4,5) give exactly 0";
    return out;
}

Outcome hypo_suite(unsigned threads) {
    Outcome out;
    StructAlgebra p = fixture_hypo(4, 6);
    const Subspace all = Subspace::full(7);
    out.require(verify_axioms(p, threads).all(), "axioms fail");
    Classification c = classify(p);
    out.require(c.solvable && c.solvability_index == 3, "solvability index is not 3");
    out.require(!c.nilpotent, "fixture is nilpotent");
    NilradicalResult nil = nilradical(p);
    out.require(nil.nilradical == coords(7, {1, 2, 3, 7}), "Nil(P) = " + nil.nilradical.to_string());
    out.require(nil.agrees, "bracket-only nilradical differs");
    const Subspace i1 = coords(7, {1, 2, 3, 4, 6, 7}), i2 = coords(7, {1, 2, 3, 5, 6, 7});
    for (const Subspace& h : {i1, i2}) {
        out.require(is_ideal(p, h) && is_hypo_nilpotent(p, h), h.to_string() + " is not hypo-nilpotent");
        out.require(!series(p, h, SeriesKind::LowerCentral).reaches_zero, "ideal series reaches zero");
        SeriesResult sub = series(p, h, SeriesKind::Subalgebra);
        out.require(sub.reaches_zero && sub.index == 2, "subalgebra series index is not 2");
    }
    out.require((i1 + i2) == all && !is_nilpotent_ideal(p, i1 + i2), "I1 + I2 is not P or is nilpotent");
    out.require(i1.intersect(i2).contains(nil.nilradical), "Nil not in I1 and I2");
    // 0 != P^2 <= Nil(P) < H <= P for H = I1, I2.
    Subspace square = series(p, all, SeriesKind::LowerCentral).terms.at(1);
    for (const Subspace& h : {i1, i2}) {
        out.require(!square.is_zero() && nil.nilradical.contains(square) && h.contains(nil.nilradical) &&
                        h.dim() > nil.nilradical.dim() && all.contains(h),
                    "chain through " + h.to_string() + " is not strict");
    }
    auto ev = common_eigenvector(p);
    out.require(ev.has_value() && ev->v == basis_vector(7, 6), "common eigenvector is not e7");
    if (ev) {
        for (const auto& l : ev->eigenvalues) out.require(l == 0, "nonzero eigenvalue");
    }
    if (out.pass) out.detail = "all structure assertions hold on the 7-dim fixture";
    return out;
}

std::vector<std::pair<std::string, StructAlgebra>> property_instances() {
    std::vector<std::pair<std::string, StructAlgebra>> out{{"hypo", fixture_hypo()}, {"torus", fixture_torus()}};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        out.emplace_back("random:" + std::to_string(seed), random_poisson_3lie(seed, 6));
    }
    return out;
}

Outcome properties(unsigned threads) {
    Outcome out;
    std::size_t checks = 0;
    for (const auto& [name, p] : property_instances()) {
        out.require(verify_axioms(p, threads).all(), name + " fails the axioms");
        StructureCheckReport r = check_structure_properties(p);
        for (const auto& c : r.checks) {
            out.require(c.holds, name + ": " + c.name + " fails at " + c.detail);
            checks += c.checked;
        }
    }
    out.data["cases"] = checks;
    if (out.pass) out.detail = "13 properties on 22 algebras, " + std::to_string(checks) + " cases";
    return out;
}

std::vector<std::pair<std::string, StructAlgebra>> operator_fixtures() {
    return {{"hypo", fixture_hypo()},
            {"torus", fixture_torus()},
            {"heisenberg-3lie", heisenberg_3lie()},
            {"random:0", random_poisson_3lie(0)},
            {"random:1", random_poisson_3lie(1)}};
}

Outcome operator_identity(unsigned) {
    Outcome out;
    std::mt19937_64 rng(511);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (const auto& [name, p] : operator_fixtures()) {
        const std::size_t d = p.dim(), n = p.arity();
        auto random_vector = [&] {
            Vector v(d);
            for (auto& c : v) c = coef(rng);
            return v;
        };
        for (int trial = 0; trial < 100; ++trial) {
            Vector a = random_vector(), x = random_vector();
            std::vector<Vector> y;
            for (std::size_t s = 0; s + 1 < n; ++s) y.push_back(random_vector());
            Scalar lambda = coef(rng);
            const std::size_t k = 1 + rng() % 4;
            QMatrix pa = multiplication_operator(p, a) - QMatrix::identity(d).scaled(lambda);
            QMatrix qy = adjoint_operator(p, y);
            QMatrix pq = multiplication_operator(p, qy.apply(a));
            QMatrix lhs = pa.pow(k) * qy;
            QMatrix rhs = qy * pa.pow(k) - (pq * pa.pow(k - 1)).scaled(Scalar(static_cast<long>(k)));
            out.require(lhs == rhs, name + " trial " + std::to_string(trial));
            out.require(lhs.apply(x) == rhs.apply(x), name + " trial " + std::to_string(trial) + " on x");
        }
    }
    if (out.pass) out.detail = "100 samples on each of 5 algebras, exact operator equality";
    return out;
}

// Fixtures whose multiplication operators have several eigenvalues.
std::vector<std::pair<std::string, StructAlgebra>> eigenspace_instances() {
    auto out = operator_fixtures();
    StructAlgebra split_plane(2, 3);
    split_plane.set_product(0, 0, Vector{1, 0});
    split_plane.set_product(1, 1, Vector{0, 1});
    out.emplace_back("solvable-3lie x split plane", tensor_poisson_n(solvable_3lie(), split_plane).algebra);
    out.emplace_back("line + heisenberg-3lie", direct_sum(unital_line(3), heisenberg_3lie()));
    out.emplace_back("line + hypo", direct_sum(unital_line(4), fixture_hypo()));
    return out;
}

Outcome eigenspace_ideals(unsigned) {
    Outcome out;
    std::mt19937_64 rng(77);
    std::uniform_int_distribution<int> coef(-2, 2);
    std::size_t nontrivial = 0, pairs = 0;
    for (const auto& [name, p] : eigenspace_instances()) {
        const std::size_t d = p.dim();
        for (int trial = 0; trial < 50; ++trial) {
            Vector a(d);
            for (auto& c : a) c = coef(rng);
            // Half the time take a rational eigenvalue of P_a when there is one.
            std::vector<Scalar> roots = rational_roots(charpoly(multiplication_operator(p, a)));
            Scalar lambda = coef(rng);
            if (!roots.empty() && trial % 2 == 0) lambda = roots[rng() % roots.size()];
            Subspace w = generalized_eigenspace(p, a, lambda);
            if (!w.is_zero() && !w.is_full()) ++nontrivial;
            ++pairs;
            out.require(is_ideal(p, w), name + ": eigenspace of " + vector_expression(a) + " at " +
                                            to_string(lambda) + " is not an ideal");
        }
    }
    out.data["proper_nonzero"] = nontrivial;
    // A run where every eigenspace is 0 or P would not exercise the check.
    out.require(nontrivial >= 25, "only " + std::to_string(nontrivial) + " proper nonzero eigenspaces");
    if (out.pass) {
        out.detail = std::to_string(pairs) + " (a, lambda) pairs over 8 algebras, " + std::to_string(nontrivial) +
                     " proper nonzero eigenspaces, all ideals";
    }
    return out;
}

Outcome constructions(unsigned threads) {
    Outcome out;
    StructAlgebra unital_plane(2, 2);
    unital_plane.set_product(0, 0, Vector{1, 0});
    unital_plane.set_product(0, 1, Vector{0, 1});
    unital_plane.set_product(1, 1, Vector{1, 1});
    for (const auto& [name, p] : std::vector<std::pair<std::string, StructAlgebra>>{
             {"solvable-3lie", solvable_3lie()}, {"heisenberg-3lie", heisenberg_3lie()}, {"hypo", fixture_hypo()}}) {
        TensorAlgebra t = tensor_poisson_n(p, unital_plane, threads);
        out.require(t.verification.all(), "tensor " + name + " fails");
    }
    TensorAlgebra xu = xu_tensor(poisson_triple(), poisson_triple(), threads);
    out.require(xu.verification.all(), "xu tensor fails");
    for (std::size_t n : {2, 3}) {
        PoissonToNLieResult r = poisson_to_n_lie(poisson_triple(), n, threads);
        out.require(r.quotient.verification.all() && r.quotient.algebra.arity() == n,
                    "pipeline quotient fails at n=" + std::to_string(n));
    }
    LeibnizTensorOptions lo;
    lo.threads = threads;
    for (const auto& [name, p] : std::vector<std::pair<std::string, StructAlgebra>>{
             {"simple-3lie", simple_3lie()}, {"solvable-3lie", solvable_3lie()}, {"torus", fixture_torus()},
             {"hypo", fixture_hypo()}}) {
        LeibnizTensorResult r = leibniz_tensor_functor(p, lo);
        out.require(r.identity.holds, "Leibniz identity fails for " + name);
        out.require(r.kernel_is_ideal, "ad kernel is not an ideal for " + name);
    }
    for (const auto& [name, p] : std::vector<std::pair<std::string, StructAlgebra>>{
             {"solvable-3lie", solvable_3lie()}, {"heisenberg-3lie", heisenberg_3lie()}, {"random:3",
                                                                                         random_poisson_3lie(3, 5)}}) {
        TildeQuotientResult r = poisson_quotient_tilde(p, lo);
        out.require(r.identity.holds && r.span_in_kernel && r.ideal_in_kernel,
                    "symmetrization ideal not in Ker(ad) for " + name);
        out.require(r.verification.all(), "tilde quotient fails for " + name);
        // Emitted text must read back to the same algebra.
        out.require(parse_algebra(format_algebra(r.algebra)) == r.algebra, "round trip fails for " + name);
    }
    if (out.pass) out.detail = "all constructions verify; ideal in Ker(ad) on 3 instances";
    return out;
}

Json body_of(const std::vector<std::string>& args, int& code) {
    std::ostringstream out, err;
    code = cli::run(args, out, err);
    return cli::report_body(Json::parse(out.str()));
}

Outcome determinism(unsigned) {
    Outcome out;
    const std::vector<std::vector<std::string>> commands{
        {"criterion-probe", "--n", "3", "--m", "2", "--trials", "100", "--seed", "0"},
        {"criterion-check", "--n", "4", "--m", "3", "--matrix", "scalar:random", "--seed", "5"},
        {"criterion-check", "--n", "2", "--m", "1", "--matrix", "cyclic", "--samples", "40"},
        {"construct-jacobian", "--n", "3", "--m", "2", "--matrix", "derivative:random", "--seed", "2"},
        {"verify", "random", "--seed", "8"},
        {"classify", "fixture:hypo", "--properties"},
        {"tensor", "fixture:hypo", "--kind", "leibniz"},
        {"quotient-pipeline", "fixture:heisenberg-3lie", "--kind", "tilde"},
        {"quotient-pipeline", "fixture:poisson-triple", "--arity", "3"}};
    for (const auto& cmd : commands) {
        auto one = cmd, eight = cmd;
        one.insert(one.end(), {"--threads", "1", "--quiet"});
        eight.insert(eight.end(), {"--threads", "8", "--quiet"});
        int c1 = 0, c8 = 0;
        Json a = body_of(one, c1), b = body_of(eight, c8);
        out.require(c1 == c8 && a.dump() == b.dump(), "report bodies differ for " + cmd.front());
    }
    if (out.pass) out.detail = std::to_string(commands.size()) + " commands give identical bodies at 1 and 8 threads";
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"acceptance run"};
    unsigned threads = 1;
    std::string report_path;
    std::vector<int> only;
    app.add_option("--threads", threads, "worker threads")->check(CLI::Range(1u, 256u));
    app.add_option("--report", report_path, "write the timing-free JSON report here");
    app.add_option("--only", only, "criterion ids to run");
    CLI11_PARSE(app, argc, argv);

    const std::vector<Criterion> criteria{
        {1, "expansion-oracle", expansion_oracle},
        {2, "criterion-m52-n3", scalar_n3},
        {3, "criterion-n4", scalar_n4},
        {4, "derivative-and-identity-block-examples", examples},
        {5, "negative-control", negative_control},
        {6, "grassmann-plucker", grassmann_plucker},
        {7, "hypo-structure-suite", hypo_suite},
        {8, "series-and-nilpotency-properties", properties},
        {9, "operator-identity", operator_identity},
        {10, "eigenspace-ideals", eigenspace_ideals},
        {11, "constructions", constructions},
        {12, "determinism", determinism},
    };

    Json report{{"schema", "pnlie-acceptance/1"}, {"criteria", Json::array()}};
    bool all = true;
    for (const auto& c : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run(threads);
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << " " << c.name << ": " << o.detail
                  << " (" << std::fixed << std::setprecision(2) << secs << " s)" << std::endl;
        if (o.failures > 1) o.data["failures"] = o.failures;
        report["criteria"].push_back(
            Json{{"id", c.id}, {"name", c.name}, {"pass", o.pass}, {"detail", o.detail}, {"data", o.data}});
    }
    report["all_pass"] = all;
    if (!report_path.empty()) std::ofstream(report_path) << report.dump(2) << "\n";
    return all ? 0 : 1;
}
