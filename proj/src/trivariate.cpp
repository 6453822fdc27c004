#include "markoff/trivariate.hpp"

#include <cctype>

namespace markoff {

namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool done() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

int parse_exponent(Cursor& c) {
    if (c.peek() != '^') return 1;
    ++c.i;
    c.skip_ws();
    std::string digits;
    while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) digits += c.s[c.i++];
    if (digits.empty()) throw precondition_error("expected exponent after '^' in polynomial");
    int e = std::stoi(digits);
    if (e < 0 || e > 64) throw precondition_error("exponent out of range in polynomial");
    return e;
}

// One term: [integer][ '*' ]? (var ['^'int])*
TriPoly parse_term(Cursor& c) {
    ZZ coef = 1;
    int dx = 0, dy = 0, dz = 0;
    bool saw_anything = false;

    c.skip_ws();
    if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
        std::string digits;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) digits += c.s[c.i++];
        coef = parse_zz(digits);
        saw_anything = true;
    }
    while (true) {
        char p = c.peek();
        if (p == '*') {
            ++c.i;
            p = c.peek();
        }
        if (p == 'x' || p == 'X') { ++c.i; dx += parse_exponent(c); saw_anything = true; }
        else if (p == 'y' || p == 'Y') { ++c.i; dy += parse_exponent(c); saw_anything = true; }
        else if (p == 'z' || p == 'Z') { ++c.i; dz += parse_exponent(c); saw_anything = true; }
        else break;
    }
    if (!saw_anything) throw precondition_error("expected a term in polynomial at position " + std::to_string(c.i));
    return TriPoly::monomial(coef, dx, dy, dz);
}

TriPoly parse_sum(Cursor& c) {
    TriPoly acc;
    int sign = 1;
    char p = c.peek();
    if (p == '+' || p == '-') {
        sign = (p == '-') ? -1 : 1;
        ++c.i;
    }
    while (true) {
        TriPoly t = parse_term(c);
        acc += (sign < 0) ? -t : t;
        if (c.done()) break;
        p = c.peek();
        if (p == '+') { sign = 1; ++c.i; }
        else if (p == '-') { sign = -1; ++c.i; }
        else break;
    }
    return acc;
}

} // namespace

TriPoly parse_tripoly(const std::string& text) {
    auto eq = text.find('=');
    if (eq != std::string::npos) {
        if (text.find('=', eq + 1) != std::string::npos)
            throw precondition_error("multiple '=' in polynomial: " + text);
        return parse_tripoly(text.substr(0, eq)) - parse_tripoly(text.substr(eq + 1));
    }
    Cursor c{text};
    if (c.done()) throw precondition_error("empty polynomial");
    TriPoly p = parse_sum(c);
    if (!c.done())
        throw precondition_error("trailing garbage in polynomial '" + text + "' at position " +
                                 std::to_string(c.i));
    return p;
}

} // namespace markoff
