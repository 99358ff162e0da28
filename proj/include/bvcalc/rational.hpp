#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace bvcalc {

using Rational = boost::rational<std::int64_t>;

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string format_rational(const Rational& r);
// Accepts "p", "p/q" and "-p/q"; throws ValidationError otherwise.
Rational parse_rational(std::string_view text);

} // namespace bvcalc
