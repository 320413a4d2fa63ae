#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "germlab/mpoly.hpp"

namespace germlab {

// Grammar (a conservative superset of the documented one; implicit
// multiplication is rejected):
//   expr   := term (('+' | '-') term)*
//   term   := factor ('*' factor)*
//   factor := '-' factor | base ('^' nonneg-int)?
//   base   := rational | 'x' | 'y' | 'z' | 't' | '(' expr ')'
//   rational := int ('/' int)?
namespace detail {

struct Token {
    enum Kind { Number, Ident, Plus, Minus, Star, Caret, Slash, LParen, RParen, End } kind;
    std::string text;
    std::size_t pos;
};

inline std::vector<Token> lex(const std::string& src) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
            if (i < src.size() && src[i] == '.')
                throw ParseError(
                    "decimal literals are not supported; write an exact rational like 1/2",
                    i);
            out.push_back({Token::Number, src.substr(start, i - start), start});
            continue;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isalnum(static_cast<unsigned char>(src[i]))) ++i;
            out.push_back({Token::Ident, src.substr(start, i - start), start});
            continue;
        }
        ++i;
        switch (c) {
            case '+': out.push_back({Token::Plus, "+", start}); break;
            case '-': out.push_back({Token::Minus, "-", start}); break;
            case '*': out.push_back({Token::Star, "*", start}); break;
            case '^': out.push_back({Token::Caret, "^", start}); break;
            case '/': out.push_back({Token::Slash, "/", start}); break;
            case '(': out.push_back({Token::LParen, "(", start}); break;
            case ')': out.push_back({Token::RParen, ")", start}); break;
            case '.':
                throw ParseError(
                    "decimal literals are not supported; write an exact rational like 1/2",
                    start);
            default:
                throw ParseError(std::string("unexpected character '") + c + "'", start);
        }
    }
    out.push_back({Token::End, "", src.size()});
    return out;
}

class Parser {
public:
    explicit Parser(const std::string& src) : tokens_(lex(src)) {}

    MPoly<Rat> run() {
        MPoly<Rat> p = expr();
        if (peek().kind != Token::End)
            throw ParseError("unexpected trailing input '" + peek().text + "'", peek().pos);
        return p;
    }

private:
    const Token& peek() const { return tokens_[idx_]; }
    Token take() { return tokens_[idx_++]; }
    bool accept(Token::Kind k) {
        if (peek().kind != k) return false;
        ++idx_;
        return true;
    }

    MPoly<Rat> expr() {
        MPoly<Rat> acc = term();
        while (true) {
            if (accept(Token::Plus)) {
                acc += term();
            } else if (accept(Token::Minus)) {
                acc -= term();
            } else {
                return acc;
            }
        }
    }

    MPoly<Rat> term() {
        MPoly<Rat> acc = factor();
        while (accept(Token::Star)) acc *= factor();
        return acc;
    }

    MPoly<Rat> factor() {
        if (accept(Token::Minus)) return -factor();
        MPoly<Rat> b = base();
        if (accept(Token::Caret)) {
            const Token& t = peek();
            if (t.kind != Token::Number)
                throw ParseError("exponent must be a non-negative integer literal", t.pos);
            take();
            if (t.text.size() > 6) throw ParseError("exponent too large", t.pos);
            return b.pow(std::stoll(t.text));
        }
        return b;
    }

    MPoly<Rat> base() {
        const Token& t = peek();
        switch (t.kind) {
            case Token::Number: {
                take();
                Int num(t.text);
                if (accept(Token::Slash)) {
                    const Token& d = peek();
                    if (d.kind != Token::Number)
                        throw ParseError("expected integer denominator", d.pos);
                    take();
                    Int den(d.text);
                    if (den == 0) throw ParseError("zero denominator", d.pos);
                    return MPoly<Rat>(make_rat(num, den));
                }
                return MPoly<Rat>(Rat(num));
            }
            case Token::Ident: {
                take();
                if (t.text.size() == 1) {
                    switch (t.text[0]) {
                        case 'x': return MPoly<Rat>::variable(VX);
                        case 'y': return MPoly<Rat>::variable(VY);
                        case 'z': return MPoly<Rat>::variable(VZ);
                        case 't': return MPoly<Rat>::variable(VT);
                        default: break;
                    }
                }
                throw ParseError("unknown identifier '" + t.text +
                                     "' (variables are x, y, z, t; implicit "
                                     "multiplication is not accepted)",
                                 t.pos);
            }
            case Token::LParen: {
                take();
                MPoly<Rat> inner = expr();
                if (!accept(Token::RParen))
                    throw ParseError("expected ')'", peek().pos);
                return inner;
            }
            default:
                throw ParseError("expected a number, variable, or '('", t.pos);
        }
    }

    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
};

}  // namespace detail

/// Parses an expression into canonical expanded form.
/// Throws ParseError (with byte position) on malformed input.
inline MPoly<Rat> parse_poly(const std::string& text) {
    return detail::Parser(text).run();
}

}  // namespace germlab
