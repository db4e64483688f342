#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace bowl {

/// Exact arbitrary-precision rational used for task times and profile multipliers.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Accepts integers ("7"), decimals ("0.94", "-1.5") and fractions ("47/50").
/// Throws InputError on anything else.
Rational parse_rational(std::string_view text);

/// Terminating decimal when the denominator is 2^a*5^b ("0.94"), otherwise "n/d".
std::string format_rational(const Rational &value);

double to_double(const Rational &value);
bool is_integer(const Rational &value);
Rational pow(const Rational &base, unsigned exponent);
BigInt floor(const Rational &value);
BigInt ceil(const Rational &value);

} // namespace bowl
