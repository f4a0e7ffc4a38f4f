#include "bidding/rational.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "bidding/error.hpp"

namespace bidding {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view s) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    fail(ErrorCode::kParse, "not an integer: '" + std::string(s) + "'");
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text));
  std::int64_t den = parse_int(text.substr(slash + 1));
  if (den == 0) fail(ErrorCode::kParse, "zero denominator");
  return Rational(parse_int(text.substr(0, slash)), den);
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

bool best_rational_approximation(double x, double tolerance,
                                 std::int64_t max_denominator, Rational& out) {
  double lo = x - tolerance;
  double hi = x + tolerance;
  if (lo <= 0.0 && hi >= 0.0) {
    out = Rational(0);
    return true;
  }
  bool negative = hi < 0.0;
  if (negative) {
    std::swap(lo, hi);
    lo = -lo;
    hi = -hi;
  }
  // Simplest fraction in [lo, hi] by peeling continued-fraction terms: take
  // the integer part while both ends share it, then recurse on reciprocals.
  std::vector<std::int64_t> terms;
  for (int depth = 0; depth < 64; ++depth) {
    double fl = std::floor(lo);
    if (fl > 9.0e15) return false;
    if (fl == lo || fl + 1.0 <= hi) {
      terms.push_back(static_cast<std::int64_t>(fl == lo ? fl : fl + 1.0));
      break;
    }
    terms.push_back(static_cast<std::int64_t>(fl));
    double next_lo = 1.0 / (hi - fl);
    double next_hi = 1.0 / (lo - fl);
    lo = next_lo;
    hi = next_hi;
    if (depth == 63) return false;
  }
  // Fold the terms back into p/q.
  std::int64_t p = 1, q = 0;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    std::int64_t np = *it * p + q;
    q = p;
    p = np;
    if (q > max_denominator) return false;
  }
  if (q == 0 || q > max_denominator) return false;
  out = Rational(negative ? -p : p, q);
  return true;
}

std::int64_t lcm_of_denominators(std::int64_t acc, const Rational& r) {
  return std::lcm(acc, r.denominator());
}

}  // namespace bidding
