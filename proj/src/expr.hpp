#pragma once

// Recursive-descent reader for the arithmetic notation shared by the text
// formats: rationals, E(n,k), i, ζn, √d, x, Φ labels, + - * / ^, implicit
// products and parentheses.  Unicode forms are normalized to ASCII first.

#include <cctype>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "spets/cyclotomic.hpp"

namespace spets::detail {

std::string normalize_notation(std::string_view in);

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " at offset " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

template <class V>
struct ExprHooks {
    std::function<V(const Cyclo&)> constant;
    std::function<std::optional<V>(const std::string&)> symbol;
    std::function<V(const V&, const V&)> divide;
    std::function<V(const V&, long)> power;
    std::function<std::optional<V>(const V&, const Rational&)> frac_power;
};

template <class V>
class ExprParser {
public:
    ExprParser(std::string text, const ExprHooks<V>& hooks) : s_(std::move(text)), h_(hooks) {}

    V parse_all() {
        V v = expr();
        skip_ws();
        if (p_ != s_.size()) fail("unexpected trailing input");
        return v;
    }

private:
    std::string s_;
    const ExprHooks<V>& h_;
    std::size_t p_ = 0;

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg + " in '" + s_ + "'", p_); }

    void skip_ws() {
        while (p_ < s_.size() && (s_[p_] == ' ' || s_[p_] == '\t')) ++p_;
    }
    char peek() {
        skip_ws();
        return p_ < s_.size() ? s_[p_] : '\0';
    }
    bool accept(char c) {
        if (peek() == c) {
            ++p_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }

    mpz_class integer() {
        skip_ws();
        std::size_t b = p_;
        while (p_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p_]))) ++p_;
        if (b == p_) fail("expected integer");
        return mpz_class(s_.substr(b, p_ - b));
    }
    long small_int() {
        bool neg = accept('-');
        mpz_class z = integer();
        if (!z.fits_slong_p()) fail("integer too large");
        long v = z.get_si();
        return neg ? -v : v;
    }

    bool starts_atom() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '(' || c == '{' || c == 'E' || c == 'i' ||
               c == 'Z' || c == 'S' || c == 'x' || c == 'q' || c == 'P';
    }

    V expr() {
        bool neg = false;
        if (accept('-')) neg = true;
        else accept('+');
        V v = term();
        if (neg) v = h_.constant(Cyclo(-1)) * v;
        for (;;) {
            if (accept('+')) v = v + term();
            else if (accept('-')) v = v - term();
            else break;
        }
        return v;
    }

    V term() {
        V v = factor();
        for (;;) {
            if (accept('*')) v = v * factor();
            else if (accept('/')) v = h_.divide(v, factor());
            else if (starts_atom()) v = v * factor();
            else break;
        }
        return v;
    }

    V factor() {
        if (accept('-')) return h_.constant(Cyclo(-1)) * factor();
        V base = atom();
        if (accept('^')) {
            long num = 0, den = 1;
            if (accept('{') || accept('(')) {
                char close = s_[p_ - 1] == '{' ? '}' : ')';
                num = small_int();
                if (accept('/')) den = small_int();
                expect(close);
            } else {
                num = small_int();
            }
            if (den == 1) return h_.power(base, num);
            if (!h_.frac_power) fail("fractional exponent not allowed here");
            auto r = h_.frac_power(base, Rational(num, den));
            if (!r) fail("fractional exponent not allowed here");
            return *r;
        }
        return base;
    }

    V atom() {
        char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) return h_.constant(Cyclo(Rational(integer())));
        if (c == '(' || c == '{') {
            ++p_;
            V v = expr();
            expect(c == '(' ? ')' : '}');
            return v;
        }
        ++p_;
        switch (c) {
            case 'E': {
                expect('(');
                long n = small_int();
                long k = 1;
                if (accept(',')) k = small_int();
                expect(')');
                if (n <= 0) fail("E(n,k) needs n >= 1");
                return h_.constant(Cyclo::root_of_unity(n, k));
            }
            case 'i':
                return h_.constant(Cyclo::root_of_unity(4, 1));
            case 'Z': {
                accept('_');
                bool brace = accept('{');
                long n = small_int();
                if (brace) expect('}');
                if (n <= 0) fail("ζn needs n >= 1");
                return h_.constant(Cyclo::root_of_unity(n, 1));
            }
            case 'S': {
                long d;
                if (accept('(') || accept('{')) {
                    char close = s_[p_ - 1] == '(' ? ')' : '}';
                    d = small_int();
                    expect(close);
                } else {
                    d = small_int();
                }
                return h_.constant(Cyclo::sqrt(d));
            }
            case 'x':
            case 'q': {
                auto v = h_.symbol ? h_.symbol("x") : std::nullopt;
                if (!v) fail("the variable x is not allowed here");
                return *v;
            }
            case 'P': {
                std::string name = "Phi";
                while (p_ < s_.size() && s_[p_] == '\'') name += s_[p_++];
                if (p_ + 1 < s_.size() && s_[p_] == '^' && (s_[p_ + 1] == '(' || s_[p_ + 1] == '{')) {
                    char close = s_[p_ + 1] == '(' ? ')' : '}';
                    p_ += 2;
                    if (close == '}' && accept('(')) {
                        long k = small_int();
                        expect(')');
                        expect('}');
                        name += "^(" + std::to_string(k) + ")";
                    } else {
                        long k = small_int();
                        expect(close);
                        name += "^(" + std::to_string(k) + ")";
                    }
                }
                accept('_');
                bool brace = accept('{');
                long d = small_int();
                if (brace) expect('}');
                name += std::to_string(d);
                auto v = h_.symbol ? h_.symbol(name) : std::nullopt;
                if (!v) fail("unknown cyclotomic factor " + name);
                return *v;
            }
            default:
                --p_;
                fail(std::string("unexpected character '") + c + "'");
        }
    }
};

}  // namespace spets::detail
