#include "lcft/parser.hpp"

#include <cctype>

namespace lcft {

namespace {

struct Lexer {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace((unsigned char)s[i])) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail_usage("expected '" + std::string(1, c) + "' in element literal: " + s);
    }
    bool accept_word(const std::string& w) {
        skip_ws();
        if (w.empty() || s.compare(i, w.size(), w) != 0) return false;
        size_t j = i + w.size();
        // identifiers must not continue
        if (j < s.size() && (std::isalnum((unsigned char)s[j]))) {
            // allow t1/t2 style names: the digit is part of the name itself
            return false;
        }
        i = j;
        return true;
    }
    long long number() {
        skip_ws();
        bool negative = false;
        if (i < s.size() && (s[i] == '-' || s[i] == '+')) negative = s[i++] == '-';
        if (i >= s.size() || !std::isdigit((unsigned char)s[i])) fail_usage("expected an integer in: " + s);
        long long n = 0;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) {
            n = n * 10 + (s[i++] - '0');
            if (n > 1000000) fail_usage("integer literal too large");
        }
        return negative ? -n : n;
    }
};

struct Parser {
    Lexer lex;
    TowerSpecPtr spec;

    TowerElem expr() {
        bool neg = lex.accept('-');
        TowerElem acc = term();
        if (neg) acc = -acc;
        for (;;) {
            if (lex.accept('+')) acc = acc + term();
            else if (lex.accept('-')) acc = acc - term();
            else return acc;
        }
    }

    TowerElem term() {
        TowerElem acc = factor();
        while (lex.accept('*')) acc = acc * factor();
        return acc;
    }

    TowerElem factor() {
        TowerElem a = atom();
        if (lex.accept('^')) {
            long long e = lex.number();
            a = a.pow(e);
        }
        return a;
    }

    TowerElem atom() {
        if (lex.accept('(')) {
            TowerElem e = expr();
            lex.expect(')');
            return e;
        }
        if (lex.accept_word(spec->name1)) return TowerElem::param(spec, 1);
        if (spec->level == 2 && lex.accept_word(spec->name2)) return TowerElem::param(spec, 2);
        if (lex.accept_word("g")) return TowerElem::constant(spec, spec->k->theta());
        char c = lex.peek();
        if (std::isdigit((unsigned char)c)) {
            long long n = lex.number();
            return TowerElem::constant(spec, spec->k->from_int(n));
        }
        fail_usage("unexpected token at position " + std::to_string(lex.i) + " in: " + lex.s);
    }
};

std::string fq_str(uint8_t v, const FieldSpec& k) { return k.to_string(v); }

bool is_composite(const std::string& s) { return s.find('+') != std::string::npos || s.find('-') != std::string::npos; }

std::string power_str(const std::string& name, long e) {
    if (e == 1) return name;
    return name + "^" + std::to_string(e);
}

std::string series1_str(const Series1& s, const FieldSpec& k, const std::string& name) {
    if (s.known_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < s.coeffs().size(); ++i) {
        uint8_t c = s.coeffs()[i];
        if (c == 0) continue;
        long e = s.lead() + long(i);
        std::string cs = fq_str(c, k);
        std::string term;
        if (e == 0) term = cs;
        else if (c == 1) term = power_str(name, e);
        else if (is_composite(cs)) term = "(" + cs + ")*" + power_str(name, e);
        else term = cs + "*" + power_str(name, e);
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

} // namespace

TowerElem parse_element(const std::string& text, TowerSpecPtr spec) {
    Parser p{Lexer{text}, spec};
    TowerElem e = p.expr();
    if (!p.lex.eof()) fail_usage("trailing characters in element literal: " + text);
    return e;
}

std::string print_fq(Fq c) { return c.field()->to_string(c.idx()); }

std::string print_element(const TowerElem& e) {
    const TowerSpec& sp = *e.spec();
    if (e.level() == 1) return series1_str(e.s1(), *sp.k, sp.name1);
    const Series2& s = e.s2();
    if (s.known_zero()) return "0";
    std::string out;
    for (size_t j = 0; j < s.coeffs().size(); ++j) {
        const Series1& cj = s.coeffs()[j];
        if (cj.known_zero()) continue;
        long e2 = s.lead() + long(j);
        std::string inner = series1_str(cj, *sp.k, sp.name1);
        std::string term;
        if (e2 == 0) term = inner;
        else if (inner == "1") term = power_str(sp.name2, e2);
        else if (is_composite(inner) || inner.find('*') != std::string::npos)
            term = "(" + inner + ")*" + power_str(sp.name2, e2);
        else term = inner + "*" + power_str(sp.name2, e2);
        if (!out.empty()) out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

std::string TowerElem::str() const { return print_element(*this); }

} // namespace lcft
