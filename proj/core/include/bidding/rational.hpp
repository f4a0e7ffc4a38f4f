#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace bidding {

using Rational = boost::rational<std::int64_t>;

// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

double to_double(const Rational& r);

// Simplest fraction (smallest denominator) within `tolerance` of `x` whose
// denominator does not exceed `max_denominator`; found by walking the
// continued-fraction expansion. Returns false when no such fraction exists.
bool best_rational_approximation(double x, double tolerance,
                                 std::int64_t max_denominator, Rational& out);

std::int64_t lcm_of_denominators(std::int64_t acc, const Rational& r);

}  // namespace bidding
