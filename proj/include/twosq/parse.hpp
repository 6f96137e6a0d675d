#pragma once

#include <twosq/quadfield.hpp>

#include <cctype>
#include <string>

namespace twosq {

namespace detail {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    void expect(char c) {
        skip_ws();
        if (i >= s.size() || s[i] != c)
            throw ParseError(std::string("expected '") + c + "' at position " + std::to_string(i));
        ++i;
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect_word(const std::string& w) {
        skip_ws();
        for (char ch : w) {
            if (i >= s.size() || s[i] != ch)
                throw ParseError("expected \"" + w + "\" at position " + std::to_string(i));
            ++i;
        }
    }
    bool at_end() {
        skip_ws();
        return i >= s.size();
    }
    // signed integer; leading signs may repeat ("+-1") and carry whitespace
    Int integer() {
        skip_ws();
        int sign = 1;
        while (i < s.size() && (s[i] == '+' || s[i] == '-')) {
            if (s[i] == '-') sign = -sign;
            ++i;
            skip_ws();
        }
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ParseError("expected integer at position " + std::to_string(i));
        std::size_t d0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        Int v(s.substr(d0, i - d0));
        return sign < 0 ? -v : v;
    }
};

}  // namespace detail

// Grammar: `(<int> + <int>*sqrt(<d>)) / <1|2>` with optional whitespace,
// optional /den, negative b allowed; bare integers are shorthand for b = 0.
inline QuadInt parse_alpha(const std::string& text, const FieldDesc& field) {
    detail::Cursor c{text};
    if (c.peek() != '(') {
        Int a = c.integer();
        if (!c.at_end()) throw ParseError("unexpected trailing characters at position " + std::to_string(c.i));
        return make(field, a, 0, 1);
    }
    c.expect('(');
    Int a = c.integer();
    if (c.peek() != '+' && c.peek() != '-')
        throw ParseError("expected '+' or '-' at position " + std::to_string(c.i));
    Int b = c.integer();
    c.expect('*');
    c.expect_word("sqrt");
    c.expect('(');
    Int d = c.integer();
    c.expect(')');
    c.expect(')');
    int den = 1;
    if (c.accept('/')) {
        Int dv = c.integer();
        if (dv == 1) {
            den = 1;
        } else if (dv == 2) {
            den = 2;
        } else {
            throw ParseError("denominator must be 1 or 2, got " + dv.str());
        }
    }
    if (!c.at_end()) throw ParseError("unexpected trailing characters at position " + std::to_string(c.i));
    if (d != field.d)
        throw FieldMismatchError("alpha mentions sqrt(" + d.str() + ") but the field has d = " + field.d.str());
    return make(field, a, b, den);
}

}  // namespace twosq
