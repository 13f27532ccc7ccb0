#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <string_view>

namespace qlp {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses a nonnegative decimal literal ("0.80", "5", "12.5") or a fraction
/// ("3/7") into an exact rational. Returns nullopt on malformed input.
std::optional<Rational> parse_rational(std::string_view text);

/// Renders exactly: as a decimal when the reduced denominator is 2^a 5^b,
/// otherwise as "p/q".
std::string format_rational(const Rational& r);

} // namespace qlp
