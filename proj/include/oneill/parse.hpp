#pragma once

#include <cctype>
#include <string>

#include "oneill/poly.hpp"

namespace oneill {

/// Recursive-descent parser for chart expressions.
///
/// Grammar:
///   expr     := term (('+' | '-') term)*
///   term     := factor ('*' factor)*
///   factor   := '-' factor | atom ('^' uint)?
///   atom     := rational | 'sqrt_d' | variable | '(' expr ')'
///   rational := int ('/' uint)?
///
/// Printing a Poly with Poly::str() and re-parsing reproduces it exactly.
class ExprParser {
public:
    ExprParser(std::string src, ChartPtr chart, int d = 2)
        : src_(std::move(src)), chart_(std::move(chart)), d_(d) {}

    Poly parse() {
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != src_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly parse_expr() {
        Poly p = parse_term();
        for (;;) {
            skip_ws();
            if (accept('+')) {
                p += parse_term();
            } else if (accept('-')) {
                p -= parse_term();
            } else {
                return p;
            }
        }
    }

    Poly parse_term() {
        Poly p = parse_factor();
        for (;;) {
            skip_ws();
            if (accept('*'))
                p *= parse_factor();
            else
                return p;
        }
    }

    Poly parse_factor() {
        skip_ws();
        if (accept('-')) return -parse_factor();
        Poly p = parse_atom();
        skip_ws();
        if (accept('^')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(peek())) fail("expected exponent");
            unsigned long e = 0;
            while (pos_ < src_.size() && std::isdigit(peek())) {
                e = e * 10 + static_cast<unsigned long>(peek() - '0');
                if (e > 1000) fail("exponent too large");
                ++pos_;
            }
            return p.pow(static_cast<unsigned>(e));
        }
        return p;
    }

    Poly parse_atom() {
        skip_ws();
        if (pos_ >= src_.size()) fail("unexpected end of expression");
        char c = peek();
        if (accept('(')) {
            Poly p = parse_expr();
            skip_ws();
            if (!accept(')')) fail("expected ')'");
            return p;
        }
        if (std::isdigit(c)) return Poly::constant(chart_, FieldElem(parse_rational()));
        if (std::isalpha(c) || c == '_') {
            std::string name = parse_ident();
            if (name == "sqrt_d") return Poly::constant(chart_, FieldElem::sqrt_d(d_));
            int idx = chart_->index_of(name);
            if (idx < 0) fail("unknown variable '" + name + "'");
            return Poly::variable(chart_, idx);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    Rational parse_rational() {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(peek())) digits += src_[pos_++];
        size_t save = pos_;
        skip_ws();
        if (accept('/')) {
            skip_ws();
            if (pos_ >= src_.size() || !std::isdigit(peek())) fail("expected denominator");
            std::string den;
            while (pos_ < src_.size() && std::isdigit(peek())) den += src_[pos_++];
            if (rational_from_string(den) == 0) fail("zero denominator");
            return rational_from_string(digits + "/" + den);
        }
        pos_ = save;
        return rational_from_string(digits);
    }

    std::string parse_ident() {
        std::string s;
        while (pos_ < src_.size() && (std::isalnum(peek()) || peek() == '_')) s += src_[pos_++];
        return s;
    }

    char peek() const { return src_[pos_]; }
    bool accept(char c) {
        if (pos_ < src_.size() && src_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    void skip_ws() {
        while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' ||
                                      src_[pos_] == '\n' || src_[pos_] == '\r'))
            ++pos_;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        int line = 1, col = 1;
        for (size_t i = 0; i < pos_ && i < src_.size(); ++i) {
            if (src_[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw parse_error(msg, line, col);
    }

    std::string src_;
    ChartPtr chart_;
    int d_;
    size_t pos_ = 0;
};

inline Poly parse_poly(const std::string& src, const ChartPtr& chart, int d = 2) {
    return ExprParser(src, chart, d).parse();
}

}  // namespace oneill
