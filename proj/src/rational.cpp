#include "xsplane/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace xsplane {

Rational pow_rational(const Rational& base, unsigned exp) {
    Rational result = 1;
    Rational factor = base;
    for (unsigned e = exp; e != 0; e >>= 1) {
        if (e & 1u) result *= factor;
        if (e > 1) factor *= factor;
    }
    return result;
}

namespace {

// integer | decimal | "2^k"
Rational parse_atom(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty number");
    if (text.rfind("2^", 0) == 0) {
        const std::string exp_text = text.substr(2);
        if (exp_text.empty()) throw std::invalid_argument("bad power: " + text);
        for (char ch : exp_text)
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw std::invalid_argument("bad power: " + text);
        unsigned long exp = std::stoul(exp_text);
        if (exp > 16384) throw std::invalid_argument("exponent too large: " + text);
        BigInt value = 1;
        value <<= exp;
        return Rational(value);
    }
    BigInt digits = 0;
    BigInt scale = 1;
    bool seen_dot = false, seen_digit = false;
    for (char ch : text) {
        if (ch == '.') {
            if (seen_dot) throw std::invalid_argument("bad number: " + text);
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits = digits * 10 + (ch - '0');
            if (seen_dot) scale *= 10;
            seen_digit = true;
        } else {
            throw std::invalid_argument("bad number: " + text);
        }
    }
    if (!seen_digit) throw std::invalid_argument("bad number: " + text);
    return Rational(digits, scale);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    auto slash = text.find('/');
    if (slash == std::string::npos) return parse_atom(text);
    if (text.find('/', slash + 1) != std::string::npos)
        throw std::invalid_argument("at most one '/' allowed: " + text);
    Rational num = parse_atom(text.substr(0, slash));
    Rational den = parse_atom(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("division by zero: " + text);
    return num / den;
}

double rational_to_double(const Rational& value) {
    return value.convert_to<double>();
}

std::string rational_to_string(const Rational& value) {
    std::string text = numerator(value).str();
    if (denominator(value) != 1) text += "/" + denominator(value).str();
    return text;
}

}  // namespace xsplane
