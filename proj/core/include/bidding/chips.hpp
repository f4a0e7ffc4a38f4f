#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace bidding {

// Non-plain chip markers. Only one kind is meaningful per rule regime:
// kStar under the standard tie-breaking advantage, kMinusEps under
// Make-it Take-it.
enum class Marker : std::uint8_t { kPlain, kStar, kMinusEps };

enum class Regime : std::uint8_t { kStar, kMinusEps };

struct ChipHolding {
  std::int32_t amount = 0;
  Marker marker = Marker::kPlain;

  constexpr ChipHolding() = default;
  constexpr ChipHolding(std::int32_t a, Marker m = Marker::kPlain)
      : amount(a), marker(m) {}

  static constexpr ChipHolding plain(std::int32_t a) { return {a, Marker::kPlain}; }
  static constexpr ChipHolding star(std::int32_t a) { return {a, Marker::kStar}; }
  static constexpr ChipHolding minus_eps(std::int32_t a) {
    return {a, Marker::kMinusEps};
  }

  bool operator==(const ChipHolding&) const = default;
};

// Position of a holding in its regime's total order, as an integer:
//   star regime:      0 < 0* < 1 < 1* < ...   rank = 2a (+1 if starred)
//   minus-eps regime: 0- < 0 < 1- < 1 < ...   rank = 2a (-1 if minus-eps)
// A plain holding has the same rank in both regimes.
std::int64_t holding_rank(ChipHolding h);

// Inverse of holding_rank within a regime.
ChipHolding holding_from_rank(std::int64_t rank, Regime regime);

// Plain holdings are compatible with both regimes.
bool compatible(ChipHolding h, Regime regime);

// Throws kInvalidArgument when the two holdings carry markers from different
// regimes (a star compared with a minus-eps).
std::strong_ordering compare_holdings(ChipHolding x, ChipHolding y);

// "3", "3*", "3-" (minus-eps).
std::string to_string(ChipHolding h);
ChipHolding parse_holding(std::string_view text);

}  // namespace bidding
