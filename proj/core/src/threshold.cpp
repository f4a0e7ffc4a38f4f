#include "bidding/threshold.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "bidding/error.hpp"

namespace bidding {

std::string_view to_string(Rule rule) {
  switch (rule) {
    case Rule::kStandard: return "standard";
    case Rule::kMakeItTakeIt: return "make_it_take_it";
    case Rule::kLosersBall: return "losers_ball";
    case Rule::kLadiesFirst: return "ladies_first";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  if (text == "standard" || text == "star") return Rule::kStandard;
  if (text == "make_it_take_it" || text == "mtt") return Rule::kMakeItTakeIt;
  if (text == "losers_ball" || text == "lb") return Rule::kLosersBall;
  if (text == "ladies_first" || text == "lf") return Rule::kLadiesFirst;
  fail(ErrorCode::kParse, "unknown rule '" + std::string(text) + "'");
}

Regime regime_of(Rule rule) {
  switch (rule) {
    case Rule::kStandard: return Regime::kStar;
    case Rule::kMakeItTakeIt: return Regime::kMinusEps;
    default:
      fail(ErrorCode::kUnsupported,
           std::string(to_string(rule)) + " has no threshold recursion; use the oracle");
  }
}

std::string_view to_string(Election e) {
  return e == Election::kSelf ? "self" : "force_opponent";
}

ThresholdValue ThresholdValue::never(int k, Regime regime) {
  Marker m = regime == Regime::kStar ? Marker::kPlain : Marker::kMinusEps;
  return ThresholdValue(ChipHolding(k + 1, m), true);
}

ThresholdValue ThresholdValue::bottom(Regime regime) {
  return of(regime == Regime::kStar ? ChipHolding::plain(0) : ChipHolding::minus_eps(0));
}

std::string ThresholdValue::to_string() const {
  return never_ ? "NEVER" : bidding::to_string(holding_);
}

bool alice_wins(const ThresholdValue& f, ChipHolding alice) {
  return !f.is_never() && holding_rank(alice) >= f.rank();
}

ThresholdValue combine(const ThresholdValue& fA, const ThresholdValue& fB, int k,
                       Rule rule) {
  Regime regime = regime_of(rule);
  if (!compatible(fA.holding(), regime) || !compatible(fB.holding(), regime)) {
    fail(ErrorCode::kInvalidArgument, "threshold marker does not match the rule");
  }
  ChipHolding h;
  if (regime == Regime::kStar) {
    const std::int32_t s = fA.magnitude() + fB.magnitude();
    const std::int32_t base = s / 2;
    const bool even = s % 2 == 0;
    const bool a_plain = fA.holding().marker == Marker::kPlain;
    if (even && a_plain) {
      h = ChipHolding::plain(base);
    } else if (!even && !a_plain) {
      h = ChipHolding::plain(base + 1);
    } else {
      h = ChipHolding::star(base);
    }
    if (h.amount > k) return ThresholdValue::never(k, regime);
  } else {
    // Worked in ranks (a- = 2a-1, a = 2a). Alice bids y = c - ceil(A/2),
    // the most that keeps her winning branch at fA. If Bob wins instead she
    // holds (c+y+1)- when she started plain and (c+y)- when she held -eps.
    const std::int64_t A = fA.rank(), B = fB.rank();
    const std::int64_t alpha = (A + 1) / 2;  // ceil(A/2), A >= -1
    auto ceil4 = [](std::int64_t x) { return x <= 0 ? 0 : (x + 3) / 4; };
    const std::int64_t c_plain = std::max(alpha, ceil4(B + 2 * alpha - 1));
    const std::int64_t c_minus = std::max(alpha, ceil4(B + 2 * alpha + 1));
    h = 2 * c_plain <= 2 * c_minus - 1
            ? ChipHolding::plain(static_cast<std::int32_t>(c_plain))
            : ChipHolding::minus_eps(static_cast<std::int32_t>(c_minus));
    if (holding_rank(h) > holding_rank(ChipHolding::plain(k))) {
      return ThresholdValue::never(k, regime);
    }
  }
  return ThresholdValue::of(h);
}

namespace {

std::optional<ThresholdValue> extreme(std::span<const VertexId> moves,
                                      std::span<const ThresholdValue> f, bool want_min) {
  std::optional<ThresholdValue> best;
  for (VertexId w : moves) {
    if (!best || (want_min ? f[w] < *best : f[w] > *best)) best = f[w];
  }
  return best;
}

// Threshold of a non-terminal vertex from its best reachable values. The bid
// winner may move or make the opponent move, so Alice's winning branch is
// the lower of the two and Bob's the higher.
ThresholdValue vertex_threshold(const std::optional<ThresholdValue>& fA,
                                const std::optional<ThresholdValue>& fB, int k, Rule rule) {
  if (!fA) return *fB;
  if (!fB) return *fA;
  return combine(std::min(*fA, *fB), std::max(*fA, *fB), k, rule);
}

}  // namespace

std::vector<ThresholdValue> threshold_bounded(const GameGraph& g, int k, Rule rule) {
  if (!g.bounded()) {
    fail(ErrorCode::kUnsupported, "threshold recursion needs a bounded game; use the oracle");
  }
  if (k < 0) fail(ErrorCode::kInvalidArgument, "chip total must be >= 0");
  Regime regime = regime_of(rule);
  std::vector<ThresholdValue> f(g.size());
  for (VertexId v : g.successors_first()) {
    if (auto o = g.terminal(v)) {
      f[v] = *o == Outcome::kAliceWin ? ThresholdValue::bottom(regime)
                                      : ThresholdValue::never(k, regime);
      continue;
    }
    f[v] = vertex_threshold(extreme(g.red_moves(v), f, true),
                            extreme(g.blue_moves(v), f, false), k, rule);
  }
  return f;
}

ThresholdTable threshold_table(const GameGraph& g, int k_min, int k_max, Rule rule,
                               int jobs) {
  if (k_min < 0 || k_max < k_min) fail(ErrorCode::kInvalidArgument, "bad k range");
  regime_of(rule);
  if (!g.bounded()) {
    fail(ErrorCode::kUnsupported, "threshold recursion needs a bounded game; use the oracle");
  }
  ThresholdTable t;
  t.rule = rule;
  t.k_min = k_min;
  t.k_max = k_max;
  t.values.resize(static_cast<std::size_t>(k_max - k_min + 1));
  std::atomic<int> next{k_min};
  auto work = [&] {
    for (int k = next++; k <= k_max; k = next++) {
      t.values[k - k_min] = threshold_bounded(g, k, rule);
    }
  };
  int n = std::clamp(jobs, 1, k_max - k_min + 1);
  if (n == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < n; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  return t;
}

MoveChoice best_moves(const GameGraph& g, std::span<const ThresholdValue> f, VertexId v,
                      Side side) {
  MoveChoice c;
  c.best = extreme(g.moves(side, v), f, side == Side::kAlice);
  if (c.best) {
    for (VertexId w : g.moves(side, v)) {
      if (f[w] == *c.best) c.argbest.push_back(w);
    }
  }
  return c;
}

std::vector<BidResult> bid_results(int k, ChipHolding alice, int x, int y, Rule rule,
                                   bool alice_uses_advantage) {
  const int a = alice.amount;
  if (x < 0 || y < 0 || x > a || y > k - a) {
    fail(ErrorCode::kIllegalAction, "bid exceeds the bidder's chips");
  }
  Regime regime = regime_of(rule);
  if (!compatible(alice, regime)) {
    fail(ErrorCode::kInvalidArgument, "holding marker does not match the rule");
  }
  const Marker m = alice.marker;
  if (regime == Regime::kStar) {
    if (x > y) return {{true, {a - x, m}}};
    if (x < y) return {{false, {a + y, m}}};
    if (m == Marker::kStar) {
      if (alice_uses_advantage) return {{true, ChipHolding::plain(a - x)}};
      return {{false, ChipHolding::star(a + x)}};
    }
    return {{false, ChipHolding::star(a + x)}, {true, ChipHolding::plain(a - x)}};
  }
  // Make-it Take-it: the -eps holder loses ties; the loser takes the chip.
  bool alice_wins_bid = x > y || (x == y && m == Marker::kPlain);
  if (alice_wins_bid) return {{true, ChipHolding::plain(a - x)}};
  return {{false, ChipHolding::minus_eps(a + y)}};
}

namespace {

bool wins_at(std::span<const ThresholdValue> f, VertexId w, ChipHolding h) {
  return alice_wins(f[w], h);
}

// Whether Alice, holding `after` at v, wins if made to move (exists) or if
// Bob moves (for all).
bool alice_move_wins(const GameGraph& g, std::span<const ThresholdValue> f, VertexId v,
                     ChipHolding after) {
  for (VertexId w : g.red_moves(v)) {
    if (wins_at(f, w, after)) return true;
  }
  return false;
}

bool bob_move_wins(const GameGraph& g, std::span<const ThresholdValue> f, VertexId v,
                   ChipHolding after) {
  for (VertexId w : g.blue_moves(v)) {
    if (!wins_at(f, w, after)) return false;
  }
  return true;
}

}  // namespace

bool action_preserves_win(const GameGraph& g, std::span<const ThresholdValue> f, VertexId v,
                          int k, ChipHolding alice, Rule rule, const BidAction& action) {
  if (g.is_terminal(v)) return false;
  if (action.bid < 0 || action.bid > alice.amount) return false;
  const bool red = !g.red_moves(v).empty();
  const bool blue = !g.blue_moves(v).empty();
  if (action.election == Election::kSelf) {
    if (!action.move_if_elected) return false;
    auto rm = g.red_moves(v);
    if (std::find(rm.begin(), rm.end(), *action.move_if_elected) == rm.end()) return false;
  } else if (!blue) {
    return false;
  }
  for (int y = 0; y <= k - alice.amount; ++y) {
    for (const BidResult& r :
         bid_results(k, alice, action.bid, y, rule, action.use_advantage_on_tie)) {
      if (r.alice_won) {
        bool ok = action.election == Election::kSelf
                      ? wins_at(f, *action.move_if_elected, r.alice_after)
                      : bob_move_wins(g, f, v, r.alice_after);
        if (!ok) return false;
      } else {
        if (blue && !bob_move_wins(g, f, v, r.alice_after)) return false;
        if (red && !alice_move_wins(g, f, v, r.alice_after)) return false;
      }
    }
  }
  return true;
}

BidAction optimal_action(const GameGraph& g, std::span<const ThresholdValue> f, VertexId v,
                         int k, ChipHolding alice, Rule rule) {
  if (!g.valid_vertex(v) || g.is_terminal(v)) {
    fail(ErrorCode::kInvalidArgument, "no bid at a terminal vertex");
  }
  if (alice.amount < 0 || alice.amount > k) {
    fail(ErrorCode::kInvalidArgument, "holding exceeds the chip total");
  }
  Regime regime = regime_of(rule);
  if (!compatible(alice, regime)) {
    fail(ErrorCode::kInvalidArgument, "holding marker does not match the rule");
  }
  MoveChoice mine = best_moves(g, f, v, Side::kAlice);
  MoveChoice theirs = best_moves(g, f, v, Side::kBob);
  ThresholdValue here = vertex_threshold(mine.best, theirs.best, k, rule);
  if (!alice_wins(here, alice)) {
    fail(ErrorCode::kOutsideWinningRegion,
         "holding " + to_string(alice) + " is below the threshold " + here.to_string());
  }

  BidAction base;
  ThresholdValue low, high;
  if (mine.best && (!theirs.best || *mine.best <= *theirs.best)) {
    base.election = Election::kSelf;
    base.move_if_elected = mine.argbest.front();
    low = *mine.best;
    high = theirs.best.value_or(*mine.best);
  } else {
    base.election = Election::kForceOpponent;
    low = *theirs.best;
    high = mine.best.value_or(*theirs.best);
  }

  // Bids from the recursion's case analysis, most specific first.
  const int s = low.magnitude() + high.magnitude();
  const int gap = high.magnitude() - low.magnitude();
  const bool low_plain = low.holding().marker == Marker::kPlain;
  int target;
  if (s % 2 == 0) {
    target = low_plain ? gap / 2 : gap / 2 - 1;
  } else {
    target = gap / 2;
  }
  std::vector<std::pair<int, bool>> candidates;
  bool exact = (s % 2 == 0 && low_plain) || (s % 2 == 1 && !low_plain);
  if (regime == Regime::kMinusEps) exact = true;
  if (exact) {
    candidates = {{target, true}, {target, false}, {target + 1, true}, {target + 1, false}};
  } else {
    // Smallest bid strictly above the target: the target with the advantage,
    // otherwise one more chip.
    candidates = {{target, true}, {target + 1, true}, {target + 1, false}, {target, false}};
  }
  for (auto [bid, adv] : candidates) {
    BidAction a = base;
    a.bid = std::clamp(bid, 0, alice.amount);
    a.use_advantage_on_tie = adv;
    if (action_preserves_win(g, f, v, k, alice, rule, a)) return a;
  }

  // Exhaustive fallback over bids, tie decisions and elections.
  std::vector<BidAction> elections;
  for (VertexId w : g.red_moves(v)) {
    BidAction a;
    a.election = Election::kSelf;
    a.move_if_elected = w;
    elections.push_back(a);
  }
  if (!g.blue_moves(v).empty()) {
    BidAction a;
    a.election = Election::kForceOpponent;
    elections.push_back(a);
  }
  for (int bid = 0; bid <= alice.amount; ++bid) {
    for (bool adv : {true, false}) {
      for (BidAction a : elections) {
        a.bid = bid;
        a.use_advantage_on_tie = adv;
        a.from_case_analysis = false;
        if (action_preserves_win(g, f, v, k, alice, rule, a)) return a;
      }
    }
  }
  fail(ErrorCode::kOutsideWinningRegion, "no action preserves the win");
}

}  // namespace bidding
