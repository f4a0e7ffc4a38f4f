#include "bidding/chips.hpp"

#include <charconv>

#include "bidding/error.hpp"

namespace bidding {

std::int64_t holding_rank(ChipHolding h) {
  std::int64_t base = 2 * static_cast<std::int64_t>(h.amount);
  switch (h.marker) {
    case Marker::kPlain: return base;
    case Marker::kStar: return base + 1;
    case Marker::kMinusEps: return base - 1;
  }
  return base;
}

ChipHolding holding_from_rank(std::int64_t rank, Regime regime) {
  if (rank % 2 == 0) return ChipHolding::plain(static_cast<std::int32_t>(rank / 2));
  if (regime == Regime::kStar) {
    return ChipHolding::star(static_cast<std::int32_t>((rank - 1) / 2));
  }
  return ChipHolding::minus_eps(static_cast<std::int32_t>((rank + 1) / 2));
}

bool compatible(ChipHolding h, Regime regime) {
  switch (h.marker) {
    case Marker::kPlain: return true;
    case Marker::kStar: return regime == Regime::kStar;
    case Marker::kMinusEps: return regime == Regime::kMinusEps;
  }
  return false;
}

std::strong_ordering compare_holdings(ChipHolding x, ChipHolding y) {
  if ((x.marker == Marker::kStar && y.marker == Marker::kMinusEps) ||
      (x.marker == Marker::kMinusEps && y.marker == Marker::kStar)) {
    fail(ErrorCode::kInvalidArgument,
         "cannot compare " + to_string(x) + " with " + to_string(y) +
             ": holdings from different tie-breaking regimes");
  }
  return holding_rank(x) <=> holding_rank(y);
}

std::string to_string(ChipHolding h) {
  std::string s = std::to_string(h.amount);
  if (h.marker == Marker::kStar) s += '*';
  if (h.marker == Marker::kMinusEps) s += '-';
  return s;
}

ChipHolding parse_holding(std::string_view text) {
  Marker marker = Marker::kPlain;
  if (!text.empty() && text.back() == '*') {
    marker = Marker::kStar;
    text.remove_suffix(1);
  } else if (!text.empty() && text.back() == '-') {
    marker = Marker::kMinusEps;
    text.remove_suffix(1);
  }
  std::int32_t amount = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), amount);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      amount < 0) {
    fail(ErrorCode::kParse, "bad chip holding '" + std::string(text) + "'");
  }
  return {amount, marker};
}

}  // namespace bidding
