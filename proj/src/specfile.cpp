#include "boxlab/specfile.hpp"

#include <cctype>
#include <sstream>

namespace boxlab {

std::string SpecError::describe() const {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << message;
    return os.str();
}

namespace {

SpecError make_error(int line, int col, std::string msg) {
    return SpecError{line, col, std::move(msg)};
}

struct PolyLexer {
    const std::string& text;
    std::size_t pos = 0;
    int line;
    int col_base;  // 1-based column of text[0] in the original line

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    int column() const { return col_base + static_cast<int>(pos); }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
};

// factor := x<i> | 0 | 1 ; returns false and sets err on failure. On success
// `mask` is the variable bit (0 for a constant factor) and `value` the
// constant (1 unless the factor is literal 0).
bool parse_factor(PolyLexer& lx, int parties, uint32_t& mask, int& value, SpecError& err) {
    if (lx.done()) {
        err = make_error(lx.line, lx.column(), "expected factor, found end of expression");
        return false;
    }
    const char c = lx.peek();
    if (c == '0' || c == '1') {
        mask = 0;
        value = c - '0';
        ++lx.pos;
        return true;
    }
    if (c != 'x') {
        err = make_error(lx.line, lx.column(),
                         std::string("expected 'x<i>', '0' or '1', found '") + c + "'");
        return false;
    }
    const int xcol = lx.column();
    ++lx.pos;
    if (lx.pos >= lx.text.size() || !std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
        err = make_error(lx.line, xcol, "variable 'x' must be followed by an index");
        return false;
    }
    long idx = 0;
    while (lx.pos < lx.text.size() && std::isdigit(static_cast<unsigned char>(lx.text[lx.pos]))) {
        idx = idx * 10 + (lx.text[lx.pos] - '0');
        if (idx > 1000) break;
        ++lx.pos;
    }
    if (idx < 1 || idx > parties) {
        std::ostringstream os;
        os << "variable x" << idx << " out of range (parties: " << parties << ")";
        err = make_error(lx.line, xcol, os.str());
        return false;
    }
    mask = uint32_t{1} << (idx - 1);
    value = 1;
    return true;
}

}  // namespace

PolyParseResult parse_poly(const std::string& text, int parties, int line) {
    PolyParseResult res;
    res.anf.var_count = parties;
    PolyLexer lx{text, 0, line, 1};
    if (lx.done()) {
        res.error = make_error(line, lx.column(), "empty expression");
        return res;
    }
    while (true) {
        // term := factor ('*' factor)*
        uint32_t term_mask = 0;
        int term_value = 1;
        while (true) {
            uint32_t mask = 0;
            int value = 1;
            if (!parse_factor(lx, parties, mask, value, res.error)) return res;
            term_mask |= mask;
            term_value &= value;
            if (lx.peek() != '*') break;
            ++lx.pos;
        }
        if (term_value) {  // a literal 0 factor annihilates the term
            if (res.anf.monomials.count(term_mask))
                res.anf.monomials.erase(term_mask);
            else
                res.anf.monomials.insert(term_mask);
        }
        if (lx.done()) break;
        if (lx.peek() != '+') {
            res.error = make_error(lx.line, lx.column(),
                                   std::string("expected '+' or end of expression, found '") +
                                       lx.peek() + "'");
            return res;
        }
        ++lx.pos;
    }
    res.ok = true;
    return res;
}

SpecParseResult parse_spec(const std::string& text) {
    SpecParseResult res;
    int parties = -1, parties_line = 0;
    std::string f_text;
    int f_line = 0, f_col = 1;
    bool have_f = false;
    Rat epsilon = 1;
    bool have_eps = false;

    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string ln = raw;
        if (!ln.empty() && ln.back() == '\r') ln.pop_back();
        std::size_t i = 0;
        while (i < ln.size() && (ln[i] == ' ' || ln[i] == '\t')) ++i;
        if (i >= ln.size() || ln[i] == '#') continue;
        const std::size_t colon = ln.find(':', i);
        if (colon == std::string::npos) {
            res.error = make_error(lineno, static_cast<int>(i) + 1,
                                   "expected 'key: value' line");
            return res;
        }
        std::string key = ln.substr(i, colon - i);
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::size_t v = colon + 1;
        while (v < ln.size() && (ln[v] == ' ' || ln[v] == '\t')) ++v;
        std::string value = ln.substr(v);
        while (!value.empty() && (value.back() == ' ' || value.back() == '\t'))
            value.pop_back();
        const int vcol = static_cast<int>(v) + 1;

        if (key == "parties") {
            if (parties >= 0) {
                res.error = make_error(lineno, static_cast<int>(i) + 1, "duplicate 'parties'");
                return res;
            }
            try {
                std::size_t used = 0;
                const long p = std::stol(value, &used);
                if (used != value.size() || p < 1 || p > 8) throw std::invalid_argument("");
                parties = static_cast<int>(p);
            } catch (...) {
                res.error = make_error(lineno, vcol, "'parties' must be an integer in 1..8");
                return res;
            }
            parties_line = lineno;
        } else if (key == "f") {
            if (have_f) {
                res.error = make_error(lineno, static_cast<int>(i) + 1, "duplicate 'f'");
                return res;
            }
            f_text = value;
            f_line = lineno;
            f_col = vcol;
            have_f = true;
        } else if (key == "epsilon") {
            if (have_eps) {
                res.error = make_error(lineno, static_cast<int>(i) + 1, "duplicate 'epsilon'");
                return res;
            }
            if (!parse_rat(value, epsilon) || epsilon < 0 || epsilon > 1) {
                res.error = make_error(lineno, vcol,
                                       "'epsilon' must be a rational p/q in [0, 1]");
                return res;
            }
            have_eps = true;
        } else {
            res.error = make_error(lineno, static_cast<int>(i) + 1,
                                   "unknown key '" + key + "'");
            return res;
        }
    }

    if (parties < 0) {
        res.error = make_error(lineno + 1, 1, "missing 'parties'");
        return res;
    }
    if (!have_f) {
        res.error = make_error(lineno + 1, 1, "missing 'f'");
        return res;
    }
    (void)parties_line;

    // column positions in the expression are relative to the value field
    PolyParseResult poly = parse_poly(f_text, parties, f_line);
    if (!poly.ok) {
        res.error = poly.error;
        res.error.column += f_col - 1;
        return res;
    }

    res.ok = true;
    res.spec.parties = parties;
    res.spec.anf = poly.anf;
    res.spec.f = from_anf(poly.anf);
    res.spec.epsilon = epsilon;
    return res;
}

std::string canonical_spec(const BoxSpec& spec) {
    std::ostringstream os;
    os << "parties: " << spec.parties << "\n";
    os << "f: " << anf_string(spec.anf) << "\n";
    os << "epsilon: " << rat_string(spec.epsilon) << "\n";
    return os.str();
}

}  // namespace boxlab
