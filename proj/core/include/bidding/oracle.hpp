#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "bidding/chips.hpp"
#include "bidding/game_graph.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"

namespace bidding {

// Who holds the rule's token: the * advantage (standard), the -eps chip
// (Make-it Take-it) or the +eps chip (Loser's Ball). kNone only under Ladies
// First, which has no token.
enum class Holder : std::uint8_t { kAlice, kBob, kNone };
std::string_view to_string(Holder h);

struct ChipState {
  VertexId vertex = 0;
  int alice = 0;  // Alice's plain chips; Bob has k - alice
  Holder holder = Holder::kAlice;

  bool operator==(const ChipState&) const = default;
};

enum class StateOutcome : std::uint8_t { kAliceWin, kBobWin, kDraw };
std::string_view to_string(StateOutcome o);

// Restricts which moves a player may choose. An inactive side is
// unrestricted.
class MoveFilter {
 public:
  static MoveFilter none() { return {}; }
  // Moves attaining the Richman optimum for `side` (argmin R for Alice,
  // argmax R for Bob). When `only_at` is given the restriction applies at
  // those vertices alone.
  static MoveFilter richman_stable(const GameGraph& g, const RichmanProfile& profile,
                                   Side side,
                                   std::optional<std::vector<VertexId>> only_at = {});

  void restrict(Side side, VertexId v, std::vector<VertexId> allowed);
  bool active(Side side) const { return !allowed_[index(side)].empty(); }
  std::span<const VertexId> moves(const GameGraph& g, Side side, VertexId v) const;

 private:
  static int index(Side s) { return s == Side::kAlice ? 0 : 1; }
  std::array<std::map<VertexId, std::vector<VertexId>>, 2> allowed_;
};

struct OracleOptions {
  std::size_t state_cap = 20'000'000;
};

// Three-valued outcome of every chip state for one game, chip total and rule.
// Win sets are least fixed points built by monotone insertion; the
// insertion index of a won state orders it after every state its winning
// action relies on.
class OutcomeTable {
 public:
  Rule rule() const { return rule_; }
  int k() const { return k_; }
  std::size_t vertex_count() const { return vertices_; }
  std::size_t state_count() const { return outcome_.size(); }

  bool has_holder(Holder h) const;
  StateOutcome at(const ChipState& s) const { return outcome_[index(s)]; }
  StateOutcome at(VertexId v, int alice, Holder h) const { return at({v, alice, h}); }

  // Insertion index among `side`'s won states, or 0 when not won by `side`.
  std::uint32_t rank(const ChipState& s, Side side) const;

  // Valid holders for this rule.
  std::vector<Holder> holders() const;

  std::size_t index(const ChipState& s) const;

 private:
  friend class OracleSolver;
  Rule rule_ = Rule::kStandard;
  int k_ = 0;
  std::size_t vertices_ = 0;
  std::vector<StateOutcome> outcome_;
  std::vector<std::uint32_t> alice_rank_;
  std::vector<std::uint32_t> bob_rank_;
};

OutcomeTable solve_chip_states(const GameGraph& g, int k, Rule rule,
                               const OracleOptions& options = {});

// Same fixed points, with the filter's players limited to its moves.
OutcomeTable solve_restricted(const GameGraph& g, int k, Rule rule,
                              const MoveFilter& filter,
                              const OracleOptions& options = {});

// Single-state queries. The holding form reads the marker as the token
// (* under the standard rule, - under Make-it Take-it; a plain holding means
// Bob holds it).
StateOutcome outcome(const GameGraph& g, ChipHolding alice, int bob, Rule rule);
StateOutcome outcome(const GameGraph& g, int alice, int bob, Holder holder, Rule rule);

// Caches outcome tables per (k, rule) for one immutable graph; safe to share
// between threads.
class Oracle {
 public:
  explicit Oracle(std::shared_ptr<const GameGraph> graph, OracleOptions options = {})
      : graph_(std::move(graph)), options_(options) {}

  const GameGraph& graph() const { return *graph_; }
  std::shared_ptr<const OutcomeTable> table(int k, Rule rule);
  StateOutcome outcome(int alice, int bob, Holder holder, Rule rule);

 private:
  std::shared_ptr<const GameGraph> graph_;
  OracleOptions options_;
  std::mutex mu_;
  std::map<std::pair<int, Rule>, std::shared_ptr<const OutcomeTable>> cache_;
};

// Actions certified by a solved table for the player `side` who wins from
// `s`: every returned choice leads only to states that table ranks strictly
// below s (or to `side`'s winning terminals).
struct OracleBid {
  int bid = 0;
  bool use_advantage_on_tie = false;
};

std::vector<OracleBid> certified_bids(const GameGraph& g, const OutcomeTable& table,
                                      const ChipState& s, Side side,
                                      const MoveFilter& filter = MoveFilter::none());

struct OracleElection {
  Election election = Election::kSelf;
  std::optional<VertexId> move;
};

// After `side` wins a bid at vertex v and the chips have moved to `after`
// (vertex field ignored), an election that stays under `rank_bound`.
std::optional<OracleElection> certified_election(const GameGraph& g,
                                                 const OutcomeTable& table, VertexId v,
                                                 const ChipState& after, Side side,
                                                 std::uint32_t rank_bound,
                                                 const MoveFilter& filter = MoveFilter::none());

// When `side` has been made to move at v with chips `after`.
std::optional<VertexId> certified_move(const GameGraph& g, const OutcomeTable& table,
                                       VertexId v, const ChipState& after, Side side,
                                       std::uint32_t rank_bound,
                                       const MoveFilter& filter = MoveFilter::none());

// Chip transfer after a bid round under `rule`: who won and the new split.
// For a standard-rule tie `holder_self_wins` is the holder's decision.
struct RoundResult {
  Side winner;
  int alice_after;
  Holder holder_after;
};
RoundResult resolve_bids(Rule rule, int k, int alice, Holder holder, int alice_bid,
                         int bob_bid, bool holder_self_wins);

}  // namespace bidding
