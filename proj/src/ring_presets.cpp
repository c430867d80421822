#include "pnlie/ring_presets.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "pnlie/criterion.hpp"
#include "pnlie/expr_parser.hpp"

namespace pnlie {

namespace {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = text.find(sep, start);
        out.emplace_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) break;
        start = at + 1;
    }
    return out;
}

std::size_t parse_count(const std::string& text, const char* what) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(text, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != text.size()) throw std::invalid_argument(std::string("bad ") + what + " '" + text + "'");
    return v;
}

std::string trim(std::string_view s) {
    std::size_t a = s.find_first_not_of(" \t\r"), b = s.find_last_not_of(" \t\r");
    return a == std::string_view::npos ? std::string() : std::string(s.substr(a, b - a + 1));
}

}  // namespace

DerivationFamily RingPreset::derivations(std::size_t count) const {
    const std::size_t v = vars_for(count);
    if (v < count) {
        throw std::invalid_argument("ring " + name() + " has " + std::to_string(v) + " variables but " +
                                    std::to_string(count) + " derivations are needed");
    }
    return family == Family::Euler ? DerivationFamily::euler(v, count) : DerivationFamily::partial(v, count);
}

std::string RingPreset::name() const {
    std::string out = "laurent";
    if (num_vars != 0) out += ":v=" + std::to_string(num_vars);
    return out + (family == Family::Euler ? ":euler" : ":partial");
}

RingPreset parse_ring_preset(std::string_view text) {
    auto parts = split(text, ':');
    if (parts.size() < 2 || parts.size() > 3 || parts[0] != "laurent") {
        throw std::invalid_argument("unknown ring preset '" + std::string(text) + "'");
    }
    RingPreset r;
    if (parts.size() == 3) {
        if (parts[1].rfind("v=", 0) != 0) throw std::invalid_argument("expected v=<k> in '" + std::string(text) + "'");
        r.num_vars = parse_count(parts[1].substr(2), "variable count");
        if (r.num_vars == 0) throw std::invalid_argument("a ring needs at least one variable");
    }
    const std::string& fam = parts.back();
    if (fam == "euler") {
        r.family = RingPreset::Family::Euler;
    } else if (fam == "partial") {
        r.family = RingPreset::Family::Partial;
    } else {
        throw std::invalid_argument("unknown derivation family '" + fam + "'");
    }
    return r;
}

LaurentPolynomial random_laurent_polynomial(std::size_t num_vars, std::uint64_t seed, std::size_t max_terms,
                                            std::int32_t radius) {
    std::mt19937_64 rng(seed);
    const auto span = static_cast<std::uint64_t>(2 * radius + 1);
    std::size_t count = 1 + rng() % std::max<std::size_t>(max_terms, 1);
    std::vector<Term> terms;
    for (std::size_t k = 0; k < count; ++k) {
        Exponents e(num_vars);
        for (std::size_t i = 0; i < num_vars; ++i) e[i] = static_cast<std::int32_t>(rng() % span) - radius;
        long c = static_cast<long>(rng() % 10) - 5;
        if (c >= 0) ++c;
        terms.push_back({e, make_rational(c)});
    }
    auto p = LaurentPolynomial::from_terms(num_vars, std::move(terms));
    // Cancellation can empty the sum.
    return p.is_zero() ? LaurentPolynomial::constant(num_vars, 1) : p;
}

AdjoinedMatrix derivative_column_matrix(std::size_t n, const std::vector<LaurentPolynomial>& ys,
                                        const DerivationFamily& ds) {
    const std::size_t m = ys.size();
    if (ds.size() != n + m) throw std::invalid_argument("need n+m derivations");
    AdjoinedMatrix a(n, m, ds.num_vars());
    for (std::size_t r = 0; r < n + m; ++r) {
        for (std::size_t c = 0; c < m; ++c) a.a(r, c) = ds[r].apply(ys[c]);
    }
    return a;
}

AdjoinedMatrix scaled_identity_matrix(std::size_t n, std::size_t m, const LaurentPolynomial& f) {
    AdjoinedMatrix a(n, m, f.num_vars());
    for (std::size_t c = 0; c < m; ++c) a.a(c, c) = f;
    return a;
}

AdjoinedMatrix cyclic_column_matrix(std::size_t n) {
    const std::size_t v = n + 1;
    AdjoinedMatrix a(n, 1, v);
    for (std::size_t r = 0; r < v; ++r) a.a(r, 0) = LaurentPolynomial::variable(v, (r + 1) % v);
    return a;
}

MatrixBlock parse_matrix_block(std::string_view text, const RingPreset& fallback) {
    MatrixBlock out;
    std::optional<std::size_t> n, m;
    std::optional<AdjoinedMatrix> a;
    std::size_t row = 0, line_no = 0, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        std::string body = trim(line);
        if (body.empty()) continue;
        const std::size_t indent = line.find_first_not_of(" \t") + 1;

        if (!a) {
            auto space = body.find_first_of(" \t");
            std::string key = body.substr(0, space);
            std::string value = space == std::string::npos ? "" : trim(body.substr(space));
            try {
                if (key == "ring") {
                    if (n) throw std::invalid_argument("ring must come before n and m");
                    out.ring = parse_ring_preset(value);
                } else if (key == "n") {
                    n = parse_count(value, "arity");
                } else if (key == "m") {
                    m = parse_count(value, "column count");
                } else {
                    throw std::invalid_argument("expected 'ring', 'n' or 'm' before the rows");
                }
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), line_no, indent);
            }
            if (n && m) {
                if (*n < 2) throw ParseError("arity must be at least 2", line_no, indent);
                const RingPreset& ring = out.ring ? *out.ring : fallback;
                a.emplace(*n, *m, ring.vars_for(*n + *m));
            }
            continue;
        }
        if (a->m == 0 || row >= a->rows()) throw ParseError("too many rows", line_no, indent);
        auto entries = split(line, ',');
        if (entries.size() != a->m) {
            throw ParseError("expected " + std::to_string(a->m) + " entries, found " + std::to_string(entries.size()),
                             line_no, indent);
        }
        std::size_t col = 1;
        for (std::size_t c = 0; c < entries.size(); ++c) {
            a->a(row, c) = parse_polynomial(entries[c], a->num_vars(), line_no, col);
            col += entries[c].size() + 1;
        }
        ++row;
    }
    if (!a) throw ParseError("missing n or m", line_no, 1);
    if (a->m > 0 && row != a->rows()) {
        throw ParseError("expected " + std::to_string(a->rows()) + " rows, found " + std::to_string(row), line_no, 1);
    }
    out.matrix = std::move(*a);
    return out;
}

MatrixBlock read_matrix_block_file(const std::string& path, const RingPreset& fallback) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_matrix_block(ss.str(), fallback);
}

std::string format_matrix_block(const AdjoinedMatrix& a, const std::optional<RingPreset>& ring) {
    std::string out;
    if (ring) out += "ring " + ring->name() + "\n";
    out += "n " + std::to_string(a.n) + "\nm " + std::to_string(a.m) + "\n";
    if (a.m == 0) return out;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.m; ++c) out += (c ? ", " : "") + a.a(r, c).to_string();
        out += "\n";
    }
    return out;
}

bool matrix_spec_is_random(const std::string& spec) {
    return spec == "scalar:random" || spec == "derivative:random" || spec == "identity-block:random";
}

MatrixBlock matrix_from_spec(const std::string& spec, std::size_t n, std::size_t m, const RingPreset& ring,
                             std::uint64_t seed) {
    auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "file") return read_matrix_block_file(arg, ring);

    const std::size_t v = ring.vars_for(n + m);
    MatrixBlock out;
    if (kind == "scalar") {
        if (arg == "random") {
            out.matrix = random_scalar_matrix(n, m, v, seed);
            return out;
        }
        auto items = split(arg, ',');
        if (items.size() != (n + m) * m) {
            throw std::invalid_argument("scalar matrix needs " + std::to_string((n + m) * m) + " entries");
        }
        out.matrix = AdjoinedMatrix(n, m, v);
        for (std::size_t k = 0; k < items.size(); ++k) {
            out.matrix.a(k / m, k % m) = LaurentPolynomial::constant(v, parse_rational(trim(items[k])));
        }
        return out;
    }
    if (kind == "derivative") {
        std::vector<LaurentPolynomial> ys;
        if (arg == "random") {
            std::mt19937_64 rng(seed);
            for (std::size_t c = 0; c < m; ++c) ys.push_back(random_laurent_polynomial(v, rng()));
        } else {
            for (const auto& item : split(arg, ';')) ys.push_back(parse_polynomial(item, v));
            if (ys.size() != m) throw std::invalid_argument("derivative matrix needs m polynomials");
        }
        out.matrix = derivative_column_matrix(n, ys, ring.derivations(n + m));
        return out;
    }
    if (kind == "identity-block") {
        LaurentPolynomial f = arg == "random" ? random_laurent_polynomial(v, seed) : parse_polynomial(arg, v);
        out.matrix = scaled_identity_matrix(n, m, f);
        return out;
    }
    if (kind == "cyclic" && arg.empty()) {
        if (m != 1) throw std::invalid_argument("the cyclic matrix has one column");
        if (v != n + 1) throw std::invalid_argument("the cyclic matrix lives in n+1 variables");
        out.matrix = cyclic_column_matrix(n);
        return out;
    }
    throw std::invalid_argument("unknown matrix spec '" + spec + "'");
}

}  // namespace pnlie
