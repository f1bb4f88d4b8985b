// Recursive-descent parser for the expression grammar:
//
//   expr   ::= ['+'|'-'] term { ('+'|'-') term }
//   term   ::= unary { ('*'|'/') unary }
//   unary  ::= '-' unary | factor
//   factor ::= base [ '^' ['-'] integer ]
//   base   ::= integer | identifier | 'exp' '(' expr ')'
//            | funcname '(' identifier { ',' identifier } ')' | '(' expr ')'
//
// A function name may carry formal partials after an underscore: Phi_xy(x,y).

#include <algorithm>
#include <cctype>
#include <string>

#include "liext/errors.hpp"
#include "liext/expr.hpp"

namespace liext {

namespace {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse_all() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("syntax error at position " + std::to_string(pos_) + ": " + msg, pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    static bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

    std::string identifier() {
        skip_ws();
        if (pos_ >= text_.size() || !ident_start(text_[pos_])) fail("expected identifier");
        std::size_t start = pos_;
        while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
        return std::string(text_.substr(start, pos_ - start));
    }

    Integer integer() {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected integer");
        return Integer(std::string(text_.substr(start, pos_ - start)));
    }

    Expr expr() {
        skip_ws();
        Expr acc;
        if (accept('-'))
            acc = -term();
        else {
            accept('+');
            acc = term();
        }
        for (;;) {
            if (accept('+'))
                acc += term();
            else if (accept('-'))
                acc -= term();
            else
                return acc;
        }
    }

    Expr term() {
        Expr acc = unary();
        for (;;) {
            if (accept('*')) {
                acc *= unary();
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                acc = acc / d;
            } else {
                return acc;
            }
        }
    }

    Expr unary() {
        if (accept('-')) return -unary();
        return factor();
    }

    Expr factor() {
        Expr b = base();
        if (accept('^')) {
            bool neg = accept('-');
            Integer k = integer();
            if (!k.fits_sint_p() || k > 1000) fail("exponent too large");
            int n = static_cast<int>(k.get_si());
            if (neg && b.is_zero()) fail("zero raised to a negative power");
            b = pow(b, neg ? -n : n);
        }
        return b;
    }

    Expr base() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) return Expr(Rational(integer()));
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        if (!ident_start(c)) fail("unknown token '" + std::string(1, c) + "'");
        std::size_t at = pos_;
        std::string name = identifier();
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(') {
            ++pos_;
            if (name == "exp") {
                Expr arg = expr();
                expect(')');
                try {
                    return Expr::exp(arg);
                } catch (const DomainError& e) {
                    pos_ = at;
                    fail(e.what());
                }
            }
            std::vector<std::string> args;
            if (!accept(')')) {
                do {
                    args.push_back(canonical_identifier(identifier()));
                } while (accept(','));
                expect(')');
            }
            std::string fname = name;
            std::vector<std::string> partials;
            auto us = name.find('_');
            if (us != std::string::npos) {
                fname = name.substr(0, us);
                for (char p : name.substr(us + 1)) partials.emplace_back(1, p);
            }
            if (fname.empty()) {
                pos_ = at;
                fail("empty function name");
            }
            for (const auto& p : partials) {
                if (std::find(args.begin(), args.end(), p) == args.end()) {
                    pos_ = at;
                    fail("partial '" + p + "' of " + fname + " is not one of its arguments");
                }
            }
            return Expr::function(fname, std::move(args), std::move(partials));
        }
        if (name == "exp") fail("expected '(' after exp");
        return Expr::variable(canonical_identifier(name));
    }
};

}  // namespace

Expr parse(std::string_view text) { return ExprParser(text).parse_all(); }

}  // namespace liext
