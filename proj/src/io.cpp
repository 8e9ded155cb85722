#include "germ/io.hpp"

#include <cctype>
#include <sstream>

namespace germ {

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;

    void advance() {
        if (pos < s.size()) {
            if (s[pos] == '\n') { ++line; col = 1; }
            else ++col;
            ++pos;
        }
    }
    void skip_ws() {
        while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\t' || s[pos] == '\n' || s[pos] == '\r'))
            advance();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool eat(char c) {
        if (peek() == c) { advance(); return true; }
        return false;
    }
    [[noreturn]] void err(const std::string& what) const {
        std::ostringstream os;
        os << what << " at line " << line << ", column " << col;
        fail(errc::syntax_error, os.str());
    }
};

// grammar: sum  := ['+'|'-'] product (('+'|'-') product)*
//          product := factor ('*' factor)*
//          factor  := number | var ('^' nat)? | '(' sum ')'
struct Parser {
    Lexer lx;
    const RingPtr& ring;

    Parser(const std::string& s, const RingPtr& r) : lx{s}, ring(r) {}

    bool number_ahead() {
        char c = lx.peek();
        return std::isdigit(static_cast<unsigned char>(c));
    }

    Rat parse_number() {
        lx.skip_ws();
        std::string digits;
        while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
            digits += lx.s[lx.pos];
            lx.advance();
        }
        if (digits.empty()) lx.err("expected number");
        Rat num(digits);
        if (lx.peek() == '/') {
            lx.advance();
            std::string den;
            lx.skip_ws();
            while (lx.pos < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.pos]))) {
                den += lx.s[lx.pos];
                lx.advance();
            }
            if (den.empty()) lx.err("expected denominator");
            if (Rat(den) == 0) lx.err("zero denominator");
            num /= Rat(den);
        }
        num.canonicalize();
        return num;
    }

    Jet parse_factor() {
        char c = lx.peek();
        if (c == '(') {
            lx.advance();
            Jet f = parse_sum();
            if (!lx.eat(')')) lx.err("expected ')'");
            return f;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rat n = parse_number();
            return Jet::constant(ring, ring->field().reduce(n));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::string name;
            while (lx.pos < lx.s.size() &&
                   (std::isalnum(static_cast<unsigned char>(lx.s[lx.pos])) || lx.s[lx.pos] == '_')) {
                name += lx.s[lx.pos];
                lx.advance();
            }
            auto idx = ring->var_index(name);
            if (!idx) fail(errc::unknown_variable,
                           "variable '" + name + "' not declared (line " + std::to_string(lx.line) +
                               ", column " + std::to_string(lx.col) + ")");
            Nat exp = 1;
            if (lx.peek() == '^') {
                lx.advance();
                Rat n = parse_number();
                if (n.get_den() != 1 || n < 0) lx.err("exponent must be a natural number");
                exp = static_cast<Nat>(n.get_num().get_ui());
            }
            Exponent a(ring->nvars());
            a[*idx] = exp;
            return Jet::monomial(ring, a, ring->field().one());
        }
        lx.err("expected coefficient, variable or '('");
    }

    Jet parse_product() {
        Jet f = parse_factor();
        while (lx.peek() == '*') {
            lx.advance();
            f = f * parse_factor();
        }
        return f;
    }

    Jet parse_sum() {
        Jet acc = Jet::zero(ring);
        bool negative = false;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            negative = (c == '-');
            lx.advance();
        }
        while (true) {
            Jet t = parse_product();
            if (negative) acc -= t;
            else acc += t;
            char op = lx.peek();
            if (op == '+' || op == '-') {
                negative = (op == '-');
                lx.advance();
                continue;
            }
            break;
        }
        return acc;
    }

    Jet run() {
        Jet f = parse_sum();
        if (lx.peek() != '\0') lx.err("unexpected trailing input");
        return f;
    }
};

} // namespace

Jet parse_jet(const std::string& text, const RingPtr& ring) {
    Parser p(text, ring);
    return p.run();
}

JetVec parse_jet_vector(const std::string& text, const RingPtr& ring) {
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) fail(errc::syntax_error, "empty input");
    if (text[first] != '[') return JetVec::single(parse_jet(text, ring));
    std::size_t last = text.find_last_not_of(" \t\r\n");
    if (text[last] != ']') fail(errc::syntax_error, "unterminated vector, expected ']'");
    std::string body = text.substr(first + 1, last - first - 1);
    std::vector<Jet> comps;
    std::size_t start = 0;
    int depth = 0;
    for (std::size_t i = 0; i <= body.size(); ++i) {
        if (i < body.size() && body[i] == '(') ++depth;
        if (i < body.size() && body[i] == ')') --depth;
        if (i == body.size() || (body[i] == ';' && depth == 0)) {
            comps.push_back(parse_jet(body.substr(start, i - start), ring));
            start = i + 1;
        }
    }
    return JetVec(std::move(comps));
}

std::string to_string(const Rat& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

std::string to_string(const Exponent& a, const Ring& ring) {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        if (!first) os << "*";
        os << ring.var(i);
        if (a[i] > 1) os << "^" << a[i];
        first = false;
    }
    if (first) os << "1";
    return os.str();
}

std::string to_string(const ModuleMonomial& m, const Ring& ring, std::size_t ncomp) {
    std::string s = to_string(m.alpha, ring);
    if (ncomp > 1) s += "*e" + std::to_string(m.unit + 1);
    return s;
}

std::string to_string(const Jet& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [a, c] : f.terms()) {
        Rat coeff = c;
        bool neg = coeff < 0;
        if (first) {
            if (neg) os << "-";
        } else {
            os << (neg ? " - " : " + ");
        }
        Rat mag = neg ? Rat(-coeff) : coeff;
        if (a.degree() == 0) {
            os << mag;
        } else {
            if (mag != 1) os << mag << "*";
            os << to_string(a, *f.ring());
        }
        first = false;
    }
    return os.str();
}

std::string to_string(const JetVec& f) {
    if (f.size() == 1) return to_string(f[0]);
    std::string s = "[";
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (i) s += "; ";
        s += to_string(f[i]);
    }
    s += "]";
    return s;
}

} // namespace germ
