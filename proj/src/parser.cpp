#include "kn/parser.hpp"

#include <cctype>
#include <vector>

#include "kn/errors.hpp"

namespace kn {

namespace {

enum class Tok {
    Num, Z, Zbar, U, W, Imag, Re, Im, AbsZ,
    Plus, Minus, Star, Caret, LParen, RParen, Semi, Eq,
    NameG, NameF, End
};

struct Token {
    Tok kind;
    Rational value;  // Num only
    std::size_t pos;
    std::string text;
};

std::vector<Token> lex(const std::string& s) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto push = [&](Tok k, std::size_t pos, std::string text = "") {
        out.push_back({k, Rational(0), pos, std::move(text)});
    };
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
        // UTF-8 minus sign U+2212.
        if (c == '\xe2' && i + 2 < s.size() && s[i + 1] == '\x88' && s[i + 2] == '\x92') {
            push(Tok::Minus, i); i += 3; continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::string digits;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
            Rational v;
            if (i < s.size() && s[i] == '.') {
                std::string frac;
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) frac += s[i++];
                v = rational_from_decimal(digits + "." + frac);
            } else if (i < s.size() && s[i] == '/') {
                std::string den;
                ++i;
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) den += s[i++];
                if (den.empty()) throw ParseError("expected denominator digits", i);
                if (BigInt(den) == 0) throw ParseError("zero denominator", start);
                v = Rational(BigInt(digits), BigInt(den));
            } else {
                v = Rational(BigInt(digits));
            }
            out.push_back({Tok::Num, v, start, s.substr(start, i - start)});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (i < s.size() && std::isalpha(static_cast<unsigned char>(s[i]))) word += s[i++];
            if (word == "z") push(Tok::Z, start);
            else if (word == "zbar") push(Tok::Zbar, start);
            else if (word == "u") push(Tok::U, start);
            else if (word == "w") push(Tok::W, start);
            else if (word == "i") push(Tok::Imag, start);
            else if (word == "Re") push(Tok::Re, start);
            else if (word == "Im") push(Tok::Im, start);
            else if (word == "g") push(Tok::NameG, start);
            else if (word == "f") push(Tok::NameF, start);
            else throw ParseError("unknown identifier '" + word + "'", start);
            continue;
        }
        switch (c) {
            case '+': push(Tok::Plus, i); break;
            case '-': push(Tok::Minus, i); break;
            case '*': push(Tok::Star, i); break;
            case '^': push(Tok::Caret, i); break;
            case '(': push(Tok::LParen, i); break;
            case ')': push(Tok::RParen, i); break;
            case ';': push(Tok::Semi, i); break;
            case '=': push(Tok::Eq, i); break;
            case '|':
                if (i + 2 < s.size() && s[i + 1] == 'z' && s[i + 2] == '|') {
                    push(Tok::AbsZ, i);
                    i += 2;
                } else {
                    throw ParseError("expected |z|", i);
                }
                break;
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", i);
        }
        ++i;
    }
    push(Tok::End, s.size());
    return out;
}

// The two grammars share everything except the variable set: defining
// functions live in (z, zbar, u), holomorphic data in (z, w). A w power is
// carried in the u slot of Exponents and split out afterwards.
enum class Mode { Real, Holo };

class Parser {
  public:
    Parser(std::vector<Token> toks, Mode mode) : toks_(std::move(toks)), mode_(mode) {}

    Poly parse_expr() {
        Poly acc;
        bool negate = false;
        if (peek() == Tok::Minus) { negate = true; advance(); }
        else if (peek() == Tok::Plus) advance();
        acc = parse_term();
        if (negate) acc = -acc;
        while (peek() == Tok::Plus || peek() == Tok::Minus) {
            bool minus = peek() == Tok::Minus;
            advance();
            Poly t = parse_term();
            if (minus) acc -= t; else acc += t;
        }
        return acc;
    }

    void expect(Tok k, const char* what) {
        if (peek() != k) throw ParseError(std::string("expected ") + what, cur().pos);
        advance();
    }

    Tok peek() const { return toks_[idx_].kind; }
    const Token& cur() const { return toks_[idx_]; }
    void advance() { if (idx_ + 1 < toks_.size()) ++idx_; }
    bool at_end() const { return peek() == Tok::End; }

  private:
    static bool starts_factor(Tok k) {
        switch (k) {
            case Tok::Num: case Tok::Z: case Tok::Zbar: case Tok::U: case Tok::W:
            case Tok::Imag: case Tok::Re: case Tok::Im: case Tok::AbsZ: case Tok::LParen:
                return true;
            default:
                return false;
        }
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        while (true) {
            if (peek() == Tok::Star) { advance(); acc = acc * parse_factor(); }
            else if (starts_factor(peek())) acc = acc * parse_factor();
            else break;
        }
        return acc;
    }

    int parse_exponent() {
        if (peek() != Tok::Num) throw ParseError("expected integer exponent", cur().pos);
        const Token& t = cur();
        if (denominator(t.value) != 1) throw ParseError("exponent must be an integer", t.pos);
        BigInt n = numerator(t.value);
        if (n < 0 || n > 64) throw ParseError("exponent out of range", t.pos);
        advance();
        return n.convert_to<int>();
    }

    Poly parse_factor() {
        const Token& t = cur();
        if (t.kind == Tok::AbsZ) {
            advance();
            if (peek() != Tok::Caret)
                throw ParseError("|z| needs an even power, e.g. |z|^2", t.pos);
            advance();
            int e = parse_exponent();
            if (e % 2 != 0) throw ParseError("odd power inside |z|^k", t.pos);
            return Poly::monomial(e / 2, e / 2, 0, CRational(1));
        }
        Poly base = parse_atom();
        if (peek() == Tok::Caret) {
            advance();
            int e = parse_exponent();
            return base.pow(e);
        }
        return base;
    }

    Poly parse_atom() {
        const Token& t = cur();
        switch (t.kind) {
            case Tok::Num:
                advance();
                return Poly::constant(CRational(t.value));
            case Tok::Imag:
                advance();
                return Poly::constant(CRational(Rational(0), Rational(1)));
            case Tok::Z:
                advance();
                return Poly::variable_z();
            case Tok::Zbar:
                require_real(t, "zbar");
                advance();
                return Poly::variable_zbar();
            case Tok::U:
                require_real(t, "u");
                advance();
                return Poly::variable_u();
            case Tok::W:
                if (mode_ != Mode::Holo)
                    throw ParseError("'w' is only valid in holomorphic expressions", t.pos);
                advance();
                return Poly::monomial(0, 0, 1, CRational(1));  // w carried in the u slot
            case Tok::Re:
            case Tok::Im: {
                require_real(t, t.kind == Tok::Re ? "Re" : "Im");
                bool re = t.kind == Tok::Re;
                advance();
                expect(Tok::LParen, "'('");
                Poly inner = parse_expr();
                expect(Tok::RParen, "')'");
                Poly conj = inner.conjugated();
                CRational half(Rational(1, 2));
                if (re) return (inner + conj) * half;
                // Im p = Re(-i p)
                CRational mhi(Rational(0), Rational(-1, 2));
                return (inner - conj) * mhi;
            }
            case Tok::LParen: {
                advance();
                Poly inner = parse_expr();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                throw ParseError("expected a value", t.pos);
        }
    }

    void require_real(const Token& t, const char* what) const {
        if (mode_ != Mode::Real)
            throw ParseError(std::string("'") + what + "' is not holomorphic", t.pos);
    }

    std::vector<Token> toks_;
    std::size_t idx_ = 0;
    Mode mode_;
};

HoloPoly to_holo(const Poly& p) {
    HoloPoly h;
    for (const auto& [e, c] : p.terms()) h.add_term(e.a, e.l, c);
    return h;
}

std::string power_str(const std::string& base, int e) {
    if (e == 1) return base;
    return base + "^" + std::to_string(e);
}

}  // namespace

std::string monomial_to_string(const Exponents& e) {
    std::string s;
    auto append = [&s](const std::string& piece) {
        if (!s.empty()) s += "*";
        s += piece;
    };
    if (e.a > 0) append(power_str("z", e.a));
    if (e.b > 0) append(power_str("zbar", e.b));
    if (e.l > 0) append(power_str("u", e.l));
    return s.empty() ? "1" : s;
}

Poly parse_real_poly(const std::string& text) {
    Parser p(lex(text), Mode::Real);
    Poly result = p.parse_expr();
    if (!p.at_end()) throw ParseError("unexpected trailing input", p.cur().pos);
    if (auto bad = result.first_nonreal_term())
        throw ParseError("non-real polynomial: monomial " + monomial_to_string(*bad) +
                             " lacks its conjugate partner",
                         0);
    return result;
}

HoloPoly parse_holo_poly(const std::string& text) {
    Parser p(lex(text), Mode::Holo);
    Poly result = p.parse_expr();
    if (!p.at_end()) throw ParseError("unexpected trailing input", p.cur().pos);
    return to_holo(result);
}

HoloMap parse_holo_map(const std::string& text) {
    auto toks = lex(text);
    HoloMap map;
    Parser p(std::move(toks), Mode::Holo);
    bool have_any = false;
    while (!p.at_end()) {
        Tok name = p.peek();
        if (name != Tok::NameG && name != Tok::NameF)
            throw ParseError("expected 'g =' or 'f ='", p.cur().pos);
        p.advance();
        p.expect(Tok::Eq, "'='");
        Poly value = p.parse_expr();
        if (name == Tok::NameG) map.g = to_holo(value);
        else map.f = to_holo(value);
        have_any = true;
        if (p.peek() == Tok::Semi) p.advance();
    }
    if (!have_any) throw ParseError("empty transformation", 0);
    map.validate();
    return map;
}

std::string format_poly(const Poly& P) {
    if (P.is_zero()) return "0";
    if (auto bad = P.first_nonreal_term())
        throw Error("cannot format non-real polynomial (monomial " + monomial_to_string(*bad) +
                    ")");

    struct Group {
        int zdeg, l, amax;  // sort key: graded lex
        int diag;           // min(a, b): the |z|^{2*diag} factor
        int j;              // a - b > 0 for Re-groups, 0 on the diagonal
        CRational lead;     // diagonal coefficient, or 2c for the pair
    };
    std::vector<Group> groups;
    for (const auto& [e, c] : P.terms()) {
        if (e.a < e.b) continue;  // partner of an emitted group
        Group g;
        g.zdeg = e.zdeg();
        g.l = e.l;
        g.amax = e.a;
        g.diag = e.b;
        g.j = e.a - e.b;
        g.lead = e.a == e.b ? c : c * Rational(2);
        groups.push_back(g);
    }
    std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) {
        if (x.zdeg != y.zdeg) return x.zdeg < y.zdeg;
        if (x.l != y.l) return x.l < y.l;
        return x.amax < y.amax;
    });

    std::string out;
    for (const Group& g : groups) {
        bool negative = false;
        CRational lead = g.lead;
        if (lead.is_real() && lead.re < 0) {
            negative = true;
            lead = -lead;
        }
        std::vector<std::string> parts;
        bool coeff_done = false;
        if (lead.is_real()) {
            if (lead.re != 1 || (g.diag == 0 && g.j == 0 && g.l == 0))
                parts.push_back(to_string(lead.re));
            coeff_done = true;
        }
        if (g.diag > 0) parts.push_back("|z|^" + std::to_string(2 * g.diag));
        if (g.j > 0) {
            std::string inner;
            if (!coeff_done) inner = to_string(lead) + "*";
            inner += power_str("z", g.j);
            parts.push_back("Re(" + inner + ")");
        } else if (!coeff_done) {
            // Diagonal coefficients are real by the pairing invariant.
            parts.push_back(to_string(lead));
        }
        if (g.l > 0) parts.push_back(power_str("u", g.l));
        std::string term;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) term += "*";
            term += parts[i];
        }
        if (term.empty()) term = "1";
        if (out.empty()) {
            out = negative ? "-" + term : term;
        } else {
            out += negative ? " - " : " + ";
            out += term;
        }
    }
    return out;
}

}  // namespace kn
