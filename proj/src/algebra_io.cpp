#include "pnlie/algebra_io.hpp"

#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "pnlie/expr_parser.hpp"

namespace pnlie {

namespace {

class LineCursor {
public:
    LineCursor(std::string_view text, std::size_t line) : text_(text), line_(line) {}

    void skip_space() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\r')) ++pos_;
    }
    bool at_end() {
        skip_space();
        return pos_ >= text_.size() || text_[pos_] == '#';
    }
    char peek() {
        skip_space();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool accept(char c) {
        if (peek() != c) return false;
        ++pos_;
        return true;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string word() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }
    std::size_t integer() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        if (pos_ - start > 9) fail("integer too large", start);
        return std::stoul(std::string(text_.substr(start, pos_ - start)));
    }
    // Unsigned rational "p" or "p/q".
    Scalar rational() {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) ++pos_;
        try {
            return parse_rational(text_.substr(start, pos_ - start));
        } catch (const std::exception&) {
            fail("bad rational coefficient", start);
        }
    }
    [[noreturn]] void fail(const std::string& msg) { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, std::size_t at) { throw ParseError(msg, line_, at + 1); }
    std::size_t column() const { return pos_ + 1; }

private:
    std::string_view text_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

Vector parse_combination(LineCursor& cur, std::size_t dim) {
    Vector v(dim);
    if (cur.peek() == '0') {
        cur.integer();
        return v;
    }
    bool first = true;
    while (true) {
        int sign = 1;
        if (cur.accept('-')) {
            sign = -1;
        } else if (!cur.accept('+') && !first) {
            break;
        }
        first = false;
        Scalar c = 1;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            c = cur.rational();
            cur.accept('*');
        }
        if (cur.peek() != 'e') cur.fail("expected e<index>");
        cur.word();
        std::size_t col = cur.column();
        std::size_t k = cur.integer();
        if (k == 0 || k > dim) cur.fail("basis index out of range", col - 1);
        v[k - 1] += sign * c;
        if (cur.at_end()) break;
    }
    return v;
}

}  // namespace

Vector parse_vector_expression(std::string_view text, std::size_t dim) {
    LineCursor cur(text, 1);
    if (cur.at_end()) cur.fail("empty vector expression");
    Vector v = parse_combination(cur, dim);
    if (!cur.at_end()) cur.fail("unexpected text after vector expression");
    return v;
}

StructAlgebra parse_algebra(std::string_view text) {
    std::optional<std::size_t> dim, arity;
    BracketSymmetry symmetry = BracketSymmetry::Alternating;
    std::optional<StructAlgebra> p;
    std::set<std::pair<bool, IndexTuple>> seen;
    std::size_t line_no = 0;
    std::size_t start = 0;
    auto ensure_algebra = [&](LineCursor& cur) -> StructAlgebra& {
        if (!p) {
            if (!dim || !arity) cur.fail("entries must follow the dim and arity lines");
            try {
                p.emplace(*dim, *arity, symmetry);
            } catch (const std::invalid_argument& e) {
                cur.fail(e.what(), 0);
            }
        }
        return *p;
    };
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        ++line_no;
        start = end + 1;
        LineCursor cur(line, line_no);
        if (cur.at_end()) continue;
        char c = cur.peek();
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string key = cur.word();
            if (p) cur.fail("'" + key + "' must come before the entries", 0);
            if (key == "dim") {
                dim = cur.integer();
            } else if (key == "arity") {
                arity = cur.integer();
                if (*arity == 0) cur.fail("arity must be positive");
            } else if (key == "symmetry") {
                std::string s = cur.word();
                if (s == "alternating") {
                    symmetry = BracketSymmetry::Alternating;
                } else if (s == "general") {
                    symmetry = BracketSymmetry::General;
                } else {
                    cur.fail("symmetry must be 'alternating' or 'general'");
                }
            } else {
                cur.fail("unknown directive '" + key + "'", 0);
            }
        } else if (c == '[') {
            StructAlgebra& alg = ensure_algebra(cur);
            cur.expect('[');
            IndexTuple idx;
            do {
                std::size_t col = cur.column();
                std::size_t i = cur.integer();
                if (i == 0 || i > alg.dim()) cur.fail("basis index out of range", col - 1);
                idx.push_back(i - 1);
            } while (cur.accept(','));
            cur.expect(']');
            if (idx.size() != alg.arity()) cur.fail("bracket entry needs " + std::to_string(alg.arity()) + " indices");
            if (alg.alternating()) {
                for (std::size_t k = 1; k < idx.size(); ++k) {
                    if (idx[k - 1] >= idx[k]) cur.fail("alternating bracket indices must be strictly increasing");
                }
            }
            if (!seen.insert({true, idx}).second) cur.fail("duplicate bracket entry");
            cur.expect('=');
            Vector v = parse_combination(cur, alg.dim());
            if (!cur.at_end()) cur.fail("unexpected text");
            alg.set_bracket(idx, v);
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            StructAlgebra& alg = ensure_algebra(cur);
            std::size_t col = cur.column();
            std::size_t i = cur.integer();
            cur.expect('*');
            std::size_t j = cur.integer();
            if (i == 0 || j == 0 || i > alg.dim() || j > alg.dim()) cur.fail("basis index out of range", col - 1);
            if (i > j) cur.fail("product entries list i <= j", col - 1);
            if (!seen.insert({false, IndexTuple{i, j}}).second) cur.fail("duplicate product entry", col - 1);
            cur.expect('=');
            Vector v = parse_combination(cur, alg.dim());
            if (!cur.at_end()) cur.fail("unexpected text");
            alg.set_product(i - 1, j - 1, v);
        } else {
            cur.fail("expected a directive, bracket entry or product entry");
        }
    }
    if (!p) {
        if (!dim || !arity) throw ParseError("missing dim or arity", line_no, 1);
        p.emplace(*dim, *arity, symmetry);
    }
    return *p;
}

StructAlgebra read_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_algebra(ss.str());
}

std::string format_algebra(const StructAlgebra& p) {
    std::string out = "dim " + std::to_string(p.dim()) + "\narity " + std::to_string(p.arity()) + "\n";
    if (!p.alternating()) out += "symmetry general\n";
    for (const auto& [key, value] : p.bracket_table()) {
        out += "[";
        auto idx = p.decode_bracket_key(key);
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) out += ",";
            out += std::to_string(idx[k] + 1);
        }
        out += "] = " + vector_expression(to_dense(value, p.dim())) + "\n";
    }
    for (const auto& [key, value] : p.product_table()) {
        auto [i, j] = p.decode_product_key(key);
        out += std::to_string(i + 1) + "*" + std::to_string(j + 1) + " = " + vector_expression(to_dense(value, p.dim())) + "\n";
    }
    return out;
}

}  // namespace pnlie
