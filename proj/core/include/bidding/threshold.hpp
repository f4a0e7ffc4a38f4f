#pragma once

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bidding/chips.hpp"
#include "bidding/game_graph.hpp"

namespace bidding {

enum class Rule : std::uint8_t {
  kStandard,      // holder of the advantage decides ties; * passes on use
  kMakeItTakeIt,  // previous bid winner wins ties (the -eps chip)
  kLosersBall,    // previous bid loser wins ties (the +eps chip)
  kLadiesFirst,   // Alice wins every tie
};

std::string_view to_string(Rule rule);
Rule parse_rule(std::string_view text);

// Marker regime of a rule with a critical-threshold recursion. Throws
// kUnsupported for Loser's Ball and Ladies First.
Regime regime_of(Rule rule);

// f(G_v, k): the least holding with which Alice wins when k plain chips are
// in play, or NeverWins. Within a regime NeverWins sits one step above
// Alice's largest possible holding: (k+1) in the star regime, (k+1)- under
// Make-it Take-it.
class ThresholdValue {
 public:
  ThresholdValue() = default;

  static ThresholdValue of(ChipHolding h) { return ThresholdValue(h, false); }
  static ThresholdValue never(int k, Regime regime);
  // Smallest holding in the regime; Alice's value at her winning terminals.
  static ThresholdValue bottom(Regime regime);

  bool is_never() const { return never_; }
  // The holding; for NeverWins the (k+1) sentinel described above.
  ChipHolding holding() const { return holding_; }
  std::int32_t magnitude() const { return holding_.amount; }
  std::int64_t rank() const { return holding_rank(holding_); }

  bool operator==(const ThresholdValue& o) const { return rank() == o.rank(); }
  std::strong_ordering operator<=>(const ThresholdValue& o) const {
    return rank() <=> o.rank();
  }

  // "n", "n*", "n-", or "NEVER".
  std::string to_string() const;

 private:
  ThresholdValue(ChipHolding h, bool never) : holding_(h), never_(never) {}

  ChipHolding holding_{};
  bool never_ = false;
};

// Alice wins from a vertex iff her holding is at least its threshold.
bool alice_wins(const ThresholdValue& f, ChipHolding alice);

// One step of the discrete Richman recursion: the threshold of a vertex given
// the best threshold Alice can move to (fA) and the worst one Bob can move to
// (fB), for k chips in play.
ThresholdValue combine(const ThresholdValue& fA, const ThresholdValue& fB, int k,
                       Rule rule);

// Thresholds at every vertex of a bounded game for one chip total.
std::vector<ThresholdValue> threshold_bounded(const GameGraph& g, int k, Rule rule);

// Thresholds for every k in [k_min, k_max]; k-slices are independent and are
// computed on `jobs` threads.
struct ThresholdTable {
  Rule rule = Rule::kStandard;
  int k_min = 0;
  int k_max = -1;
  std::vector<std::vector<ThresholdValue>> values;  // [k - k_min][vertex]

  const ThresholdValue& at(VertexId v, int k) const { return values[k - k_min][v]; }
};

ThresholdTable threshold_table(const GameGraph& g, int k_min, int k_max, Rule rule,
                               int jobs = 1);

// Best reachable thresholds from v for each side, with all moves attaining
// them (ascending vertex id).
struct MoveChoice {
  std::optional<ThresholdValue> best;
  std::vector<VertexId> argbest;
};
MoveChoice best_moves(const GameGraph& g, std::span<const ThresholdValue> f,
                      VertexId v, Side side);

enum class Election : std::uint8_t { kSelf, kForceOpponent };
std::string_view to_string(Election e);

// What Alice does at v: her bid, whether she uses the advantage on a tie
// (standard rule only), and what she elects when she wins the bid.
struct BidAction {
  int bid = 0;
  bool use_advantage_on_tie = false;
  Election election = Election::kSelf;
  std::optional<VertexId> move_if_elected;  // set when election == kSelf
  // True when the bid came straight from the recursion's case analysis
  // rather than the fallback search.
  bool from_case_analysis = true;
};

// An action that keeps Alice inside her winning region against every reply.
// `f` are the thresholds at k for the same rule. Throws
// kOutsideWinningRegion when alice < f(v, k).
BidAction optimal_action(const GameGraph& g, std::span<const ThresholdValue> f,
                         VertexId v, int k, ChipHolding alice, Rule rule);

// Checks an action exhaustively against every Bob bid and tie decision using
// the thresholds of the successors.
bool action_preserves_win(const GameGraph& g, std::span<const ThresholdValue> f,
                          VertexId v, int k, ChipHolding alice, Rule rule,
                          const BidAction& action);

// Alice's holding after a bid round. `alice_won` says who took the bid.
struct BidResult {
  bool alice_won;
  ChipHolding alice_after;
};

// All possible results of Alice bidding `x` and Bob bidding `y` (two when the
// standard-rule tie is decided by Bob, who holds the advantage). For a
// standard tie where Alice holds the advantage, `alice_uses_advantage` picks
// her decision.
std::vector<BidResult> bid_results(int k, ChipHolding alice, int x, int y, Rule rule,
                                   bool alice_uses_advantage);

}  // namespace bidding
