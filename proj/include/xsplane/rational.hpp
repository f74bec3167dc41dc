#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace xsplane {

// Exact arithmetic for counts, probabilities and region volumes. All
// probability claims in this project are stated as rationals and only
// converted to double at the reporting boundary.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

Rational pow_rational(const Rational& base, unsigned exp);

// Accepts plain integers ("3"), decimals ("0.45"), powers of two
// ("2^22"), and a single quotient of those ("0.1/2^22", "1/3").
Rational parse_rational(const std::string& text);

double rational_to_double(const Rational& value);

// "num/den" in lowest terms, or just "num" for integers.
std::string rational_to_string(const Rational& value);

}  // namespace xsplane
