#pragma once

#include <cctype>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "kirwan/errors.hpp"
#include "kirwan/polynomial.hpp"

namespace kirwan {

namespace detail {

// Recursive descent over
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := primary ('^' nat)*
//   primary:= integer ['/' positive-integer] | identifier | '(' expr ')'
// The optional leading sign lets canonical output such as "-x + y" parse back.
class PolynomialParser {
public:
    PolynomialParser(std::string_view src, std::span<const std::string> names)
        : src_(src), names_(names) {}

    Polynomial parse() {
        Polynomial p = expr();
        skip_ws();
        if (pos_ != src_.size())
            fail({"'+'", "'-'", "'*'", "'^'", "end of input"}, "unexpected trailing input");
        return p;
    }

private:
    Polynomial expr() {
        skip_ws();
        int sign = 1;
        if (peek() == '+' || peek() == '-') {
            sign = peek() == '-' ? -1 : 1;
            advance();
        }
        Polynomial acc = term();
        if (sign < 0)
            acc = -acc;
        for (;;) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-')
                return acc;
            advance();
            Polynomial rhs = term();
            acc = c == '+' ? acc + rhs : acc - rhs;
        }
    }

    Polynomial term() {
        Polynomial acc = factor();
        for (;;) {
            skip_ws();
            if (peek() != '*')
                return acc;
            advance();
            acc *= factor();
        }
    }

    Polynomial factor() {
        Polynomial base = primary();
        for (;;) {
            skip_ws();
            if (peek() != '^')
                return base;
            advance();
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                fail({"natural number"}, "expected an exponent after '^'");
            std::string digits = read_digits();
            if (digits.size() > 4)
                fail({"natural number below 10000"}, "exponent too large");
            base = base.pow(static_cast<unsigned>(std::stoul(digits)));
        }
    }

    Polynomial primary() {
        skip_ws();
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c))) {
            Rational value(read_digits());
            skip_ws();
            if (peek() == '/') {
                advance();
                skip_ws();
                if (!std::isdigit(static_cast<unsigned char>(peek())))
                    fail({"positive integer"}, "expected a denominator after '/'");
                Rational den(read_digits());
                if (den == 0)
                    fail({"positive integer"}, "zero denominator");
                value /= den;
            }
            value.canonicalize();
            return Polynomial::constant(names_.size(), value);
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t line = line_, col = col_;
            std::string name;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                name += peek();
                advance();
            }
            for (std::size_t i = 0; i < names_.size(); ++i)
                if (names_[i] == name)
                    return Polynomial::variable(names_.size(), i);
            throw UnknownVariable(name, "unknown variable '" + name + "' at line " +
                                            std::to_string(line) + ", column " + std::to_string(col));
        }
        if (c == '(') {
            advance();
            Polynomial inner = expr();
            skip_ws();
            if (peek() != ')')
                fail({"')'"}, "unbalanced parenthesis");
            advance();
            return inner;
        }
        fail({"integer", "variable", "'('"}, pos_ == src_.size() ? "unexpected end of input"
                                                                  : "unexpected character");
    }

    std::string read_digits() {
        std::string d;
        while (std::isdigit(static_cast<unsigned char>(peek()))) {
            d += peek();
            advance();
        }
        return d;
    }

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    void advance() {
        if (pos_ >= src_.size())
            return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
            advance();
    }

    [[noreturn]] void fail(std::vector<std::string> expected, const std::string& msg) const {
        std::string what = "parse error at line " + std::to_string(line_) + ", column " +
                           std::to_string(col_) + ": " + msg + " (expected ";
        for (std::size_t i = 0; i < expected.size(); ++i)
            what += (i ? ", " : "") + expected[i];
        what += ")";
        throw ParseError(line_, col_, std::move(expected), what);
    }

    std::string_view src_;
    std::span<const std::string> names_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

} // namespace detail

inline Polynomial parse_polynomial(std::string_view src, std::span<const std::string> names) {
    return detail::PolynomialParser(src, names).parse();
}

} // namespace kirwan
