#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bidding/chips.hpp"
#include "bidding/game_graph.hpp"
#include "bidding/game_spec.hpp"
#include "bidding/oracle.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"

namespace bidding {

enum class Phase : std::uint8_t {
  kAwaitingBids,
  kAwaitingTieChoice,
  kAwaitingElection,
  kAwaitingMove,
  kFinished,
};
std::string_view to_string(Phase p);

enum class AiControl : std::uint8_t { kNone, kAlice, kBob, kBoth };
std::string_view to_string(AiControl a);
AiControl parse_ai_control(std::string_view text);

enum class TieChoice : std::uint8_t { kSelfWinPassToken, kOpponentWinsKeepToken };
std::string_view to_string(TieChoice c);

enum class SessionOutcome : std::uint8_t { kAliceWin, kBobWin, kDraw };
std::string_view to_string(SessionOutcome o);

struct SessionConfig {
  std::string game = "ttt";
  int alice = 0;
  int bob = 0;
  // Initial token holder; ignored (kNone) under Ladies First.
  Holder holder = Holder::kAlice;
  Rule rule = Rule::kStandard;
  AiControl ai = AiControl::kNone;
  bool hints = false;
  // Let AI-controlled decisions run as soon as they are due.
  bool auto_ai = true;

  int k() const { return alice + bob; }
};

// "4*/4", "3/5*", "2-/2", "4/4". The marked side holds the rule's token;
// with no mark Alice holds it.
void apply_split(SessionConfig& config, std::string_view split);
std::string split_text(const SessionConfig& config);

// Event-log entries of the "bidsession-1" schema.
struct SessionEvent {
  enum class Type : std::uint8_t { kBids, kTieChoice, kElection, kMove };
  Type type = Type::kBids;
  int alice_bid = 0;
  int bob_bid = 0;
  TieChoice tie = TieChoice::kOpponentWinsKeepToken;
  Side player = Side::kAlice;
  Election election = Election::kSelf;
  VertexId to = 0;
  std::optional<int> cell;  // Tic-Tac-Toe cell for moves, real coordinates
};

// Solver data an AI consults for one game. Immutable once built; the
// per-(k, rule) tables are built on first use and shared.
class AiContext {
 public:
  explicit AiContext(ResolvedGame game, OracleOptions options = {});

  const ResolvedGame& game() const { return game_; }
  const GameGraph& graph() const { return *game_.graph; }
  const GameGraph& reversed() const { return reversed_; }
  const RichmanProfile& richman() const;

  // Whether the threshold recursion is exact here (bounded, standard or MTT).
  bool uses_thresholds(Rule rule) const;
  // Thresholds for `side` (Bob's come from the reversed game).
  std::shared_ptr<const std::vector<ThresholdValue>> thresholds(Side side, int k, Rule rule);
  std::shared_ptr<const OutcomeTable> table(int k, Rule rule);

 private:
  ResolvedGame game_;
  GameGraph reversed_;
  mutable std::mutex mu_;
  mutable std::optional<RichmanProfile> richman_;
  std::map<std::tuple<int, int, Rule>, std::shared_ptr<const std::vector<ThresholdValue>>>
      thresholds_;
  Oracle oracle_;
};

// One live game. All mutations validate phase and player first and leave the
// session unchanged on error.
class PlaySession {
 public:
  PlaySession(SessionConfig config, std::shared_ptr<AiContext> ai);

  const SessionConfig& config() const { return config_; }
  const GameGraph& graph() const { return ai_->graph(); }
  Phase phase() const { return phase_; }
  VertexId position() const { return position_; }
  int alice_chips() const { return alice_; }
  int bob_chips() const { return config_.k() - alice_; }
  Holder holder() const { return holder_; }
  ChipHolding holding(Side side) const;
  std::optional<SessionOutcome> outcome() const { return outcome_; }
  const std::vector<SessionEvent>& history() const { return history_; }
  // Bid winner during election; mover during AwaitingMove.
  std::optional<Side> actor() const;
  bool committed(Side side) const { return pending_[index(side)].has_value(); }
  // Board of a Tic-Tac-Toe session in real (uncanonicalized) cells.
  const std::optional<TTTBoard>& board() const { return board_; }

  void submit_bid(Side player, int bid);
  void resolve_tie(Side player, TieChoice choice);
  // In AwaitingElection: the winner elects, with the move when electing
  // themselves (or omit it and move later). In AwaitingMove: `election` is
  // ignored and `move` is required.
  void elect_and_move(Side player, Election election, std::optional<VertexId> move);
  // Tic-Tac-Toe move by cell in the real board.
  VertexId cell_target(Side player, int cell) const;
  void move_cell(Side player, std::optional<Election> election, int cell);

  // Whether the next decision belongs to an AI-controlled player.
  bool ai_due() const;
  // Takes one AI decision; false when none is due.
  bool ai_step();
  void run_ai();

  // Legal actions for the current phase.
  std::vector<VertexId> legal_moves() const;
  std::vector<Election> legal_elections() const;
  bool can_move(Side side) const;

  // Serialized state document ("bidsession-1"). `reveal_pending` includes
  // uncommitted bid values, for snapshots.
  std::string to_json(bool reveal_pending = false) const;
  // Alice's threshold at each legal successor, when hints are on.
  std::string hints_json() const;

  static PlaySession replay(const SessionConfig& config, const std::vector<SessionEvent>& events,
                            std::shared_ptr<AiContext> ai);
  // Inverse of to_json(true): replays the events and restores pending bids.
  static PlaySession from_json(std::string_view doc, std::shared_ptr<AiContext> ai);
  void apply(const SessionEvent& e);

  // Heuristic marker for the last AI decision: true when it fell back to the
  // Richman-proportional policy outside the AI's winning region.
  bool last_ai_fallback() const { return last_ai_fallback_; }

 private:
  static int index(Side s) { return s == Side::kAlice ? 0 : 1; }
  bool ai_controls(Side side) const;
  void require_phase(Phase p) const;
  void reveal();
  void finish_round(const RoundResult& r);
  void do_move(Side mover, VertexId to, std::optional<int> cell);
  void enter_bidding();
  std::optional<int> cell_for(VertexId to) const;
  ChipState round_state() const { return {position_, round_alice_, round_holder_}; }

  int ai_bid(Side side);
  TieChoice ai_tie(Side side);
  std::pair<Election, std::optional<VertexId>> ai_election(Side side);
  VertexId ai_move(Side side);
  VertexId richman_move(Side side) const;
  // Draw-preserving fallback: table for small state spaces, else null.
  std::shared_ptr<const OutcomeTable> fallback_table() const;
  bool safe_after_round(const OutcomeTable& t, Side me, const RoundResult& r) const;
  bool safe_bid(const OutcomeTable& t, Side me, int bid) const;

  SessionConfig config_;
  std::shared_ptr<AiContext> ai_;
  Phase phase_ = Phase::kAwaitingBids;
  VertexId position_ = 0;
  int alice_ = 0;
  Holder holder_ = Holder::kAlice;
  std::optional<SessionOutcome> outcome_;
  std::vector<SessionEvent> history_;
  std::optional<int> pending_[2];
  int tied_bid_ = 0;
  std::optional<Side> winner_;
  std::optional<Side> mover_;
  // State at the start of the current round, for oracle rank bounds.
  int round_alice_ = 0;
  Holder round_holder_ = Holder::kAlice;
  std::optional<TTTBoard> board_;
  bool last_ai_fallback_ = false;
};

std::vector<SessionEvent> events_from_json(std::string_view text);
std::string events_to_json(const std::vector<SessionEvent>& events);
SessionConfig config_from_json(std::string_view text);
std::string config_to_json(const SessionConfig& config);

}  // namespace bidding
