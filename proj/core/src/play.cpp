#include "bidding/play.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

#include "bidding/analysis.hpp"
#include "bidding/builders.hpp"
#include "bidding/error.hpp"

namespace bidding {

using Json = nlohmann::ordered_json;

std::string_view to_string(Phase p) {
  switch (p) {
    case Phase::kAwaitingBids: return "AwaitingBids";
    case Phase::kAwaitingTieChoice: return "AwaitingTieChoice";
    case Phase::kAwaitingElection: return "AwaitingElection";
    case Phase::kAwaitingMove: return "AwaitingMove";
    case Phase::kFinished: return "Finished";
  }
  return "?";
}

std::string_view to_string(AiControl a) {
  switch (a) {
    case AiControl::kNone: return "none";
    case AiControl::kAlice: return "alice";
    case AiControl::kBob: return "bob";
    case AiControl::kBoth: return "both";
  }
  return "?";
}

AiControl parse_ai_control(std::string_view text) {
  if (text == "none" || text.empty()) return AiControl::kNone;
  if (text == "alice") return AiControl::kAlice;
  if (text == "bob") return AiControl::kBob;
  if (text == "both") return AiControl::kBoth;
  fail(ErrorCode::kInvalidArgument, "unknown ai side '" + std::string(text) + "'");
}

std::string_view to_string(TieChoice c) {
  return c == TieChoice::kSelfWinPassToken ? "self_win" : "opponent_wins";
}

std::string_view to_string(SessionOutcome o) {
  switch (o) {
    case SessionOutcome::kAliceWin: return "AliceWin";
    case SessionOutcome::kBobWin: return "BobWin";
    case SessionOutcome::kDraw: return "Draw";
  }
  return "?";
}

namespace {

Side parse_side(std::string_view s) {
  if (s == "alice") return Side::kAlice;
  if (s == "bob") return Side::kBob;
  fail(ErrorCode::kInvalidArgument, "unknown player '" + std::string(s) + "'");
}

TieChoice parse_tie(std::string_view s) {
  if (s == "self_win") return TieChoice::kSelfWinPassToken;
  if (s == "opponent_wins") return TieChoice::kOpponentWinsKeepToken;
  fail(ErrorCode::kInvalidArgument, "unknown tie choice '" + std::string(s) + "'");
}

Election parse_election(std::string_view s) {
  if (s == "self") return Election::kSelf;
  if (s == "force_opponent") return Election::kForceOpponent;
  fail(ErrorCode::kInvalidArgument, "unknown election '" + std::string(s) + "'");
}

Holder holder_of(Side s) { return s == Side::kAlice ? Holder::kAlice : Holder::kBob; }

int parse_count(std::string_view s) {
  if (s.empty() || s.size() > 9 ||
      !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    fail(ErrorCode::kInvalidArgument, "bad chip count '" + std::string(s) + "'");
  }
  return std::stoi(std::string(s));
}

}  // namespace

void apply_split(SessionConfig& config, std::string_view split) {
  auto slash = split.find('/');
  if (slash == std::string_view::npos) {
    fail(ErrorCode::kInvalidArgument, "split must look like '4*/4'");
  }
  std::string_view a = split.substr(0, slash);
  std::string_view b = split.substr(slash + 1);
  auto marked = [](std::string_view& s) {
    if (!s.empty() && (s.back() == '*' || s.back() == '-' || s.back() == '+')) {
      s.remove_suffix(1);
      return true;
    }
    return false;
  };
  bool ma = marked(a);
  bool mb = marked(b);
  if (ma && mb) fail(ErrorCode::kInvalidArgument, "only one player can hold the token");
  config.alice = parse_count(a);
  config.bob = parse_count(b);
  config.holder = mb ? Holder::kBob : Holder::kAlice;
}

std::string split_text(const SessionConfig& config) {
  const char* mark = config.rule == Rule::kMakeItTakeIt ? "-" : "*";
  std::string a = std::to_string(config.alice);
  std::string b = std::to_string(config.bob);
  if (config.rule != Rule::kLadiesFirst) {
    (config.holder == Holder::kBob ? b : a) += mark;
  }
  return a + "/" + b;
}

// ---------------------------------------------------------------------------

AiContext::AiContext(ResolvedGame game, OracleOptions options)
    : game_(std::move(game)), reversed_(reverse(*game_.graph)), oracle_(game_.graph, options) {}

const RichmanProfile& AiContext::richman() const {
  std::lock_guard<std::mutex> lock(mu_);
  if (!richman_) richman_ = bidding::richman(*game_.graph);
  return *richman_;
}

bool AiContext::uses_thresholds(Rule rule) const {
  return graph().bounded() && (rule == Rule::kStandard || rule == Rule::kMakeItTakeIt);
}

std::shared_ptr<const std::vector<ThresholdValue>> AiContext::thresholds(Side side, int k,
                                                                         Rule rule) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_tuple(side == Side::kAlice ? 0 : 1, k, rule);
  auto it = thresholds_.find(key);
  if (it != thresholds_.end()) return it->second;
  auto f = std::make_shared<const std::vector<ThresholdValue>>(
      threshold_bounded(side == Side::kAlice ? graph() : reversed_, k, rule));
  thresholds_[key] = f;
  return f;
}

std::shared_ptr<const OutcomeTable> AiContext::table(int k, Rule rule) {
  return oracle_.table(k, rule);
}

// ---------------------------------------------------------------------------

PlaySession::PlaySession(SessionConfig config, std::shared_ptr<AiContext> ai)
    : config_(std::move(config)), ai_(std::move(ai)) {
  if (!ai_) fail(ErrorCode::kInvalidArgument, "session needs a game");
  if (config_.alice < 0 || config_.bob < 0) {
    fail(ErrorCode::kInvalidArgument, "chip counts must be >= 0");
  }
  if (config_.rule == Rule::kLadiesFirst) {
    config_.holder = Holder::kNone;
  } else if (config_.holder == Holder::kNone) {
    fail(ErrorCode::kInvalidArgument, "this rule needs a token holder");
  }
  position_ = graph().start();
  alice_ = config_.alice;
  holder_ = config_.holder;
  if (ai_->game().ttt) board_ = ai_->game().ttt->boards[position_];
  enter_bidding();
  if (config_.auto_ai) run_ai();
}

ChipHolding PlaySession::holding(Side side) const {
  int amount = side == Side::kAlice ? alice_chips() : bob_chips();
  Marker m = Marker::kPlain;
  if (holder_ == holder_of(side)) {
    m = config_.rule == Rule::kMakeItTakeIt ? Marker::kMinusEps : Marker::kStar;
  }
  return {amount, m};
}

std::optional<Side> PlaySession::actor() const {
  if (phase_ == Phase::kAwaitingElection) return winner_;
  if (phase_ == Phase::kAwaitingMove) return mover_;
  if (phase_ == Phase::kAwaitingTieChoice) {
    return holder_ == Holder::kAlice ? Side::kAlice : Side::kBob;
  }
  return std::nullopt;
}

bool PlaySession::can_move(Side side) const {
  return !graph().moves(side, position_).empty();
}

void PlaySession::require_phase(Phase p) const {
  if (phase_ != p) {
    fail(ErrorCode::kWrongPhase, "session is in phase " + std::string(to_string(phase_)) +
                                     ", not " + std::string(to_string(p)));
  }
}

void PlaySession::enter_bidding() {
  pending_[0].reset();
  pending_[1].reset();
  winner_.reset();
  mover_.reset();
  round_alice_ = alice_;
  round_holder_ = holder_;
  if (auto o = graph().terminal(position_)) {
    phase_ = Phase::kFinished;
    outcome_ = *o == Outcome::kAliceWin ? SessionOutcome::kAliceWin
               : *o == Outcome::kBobWin ? SessionOutcome::kBobWin
                                        : SessionOutcome::kDraw;
    return;
  }
  if (!can_move(Side::kAlice) && !can_move(Side::kBob)) {
    phase_ = Phase::kFinished;
    outcome_ = SessionOutcome::kDraw;
    return;
  }
  phase_ = Phase::kAwaitingBids;
}

void PlaySession::submit_bid(Side player, int bid) {
  require_phase(Phase::kAwaitingBids);
  if (pending_[index(player)]) {
    fail(ErrorCode::kWrongPlayer, std::string(to_string(player)) + " has already bid");
  }
  int chips = player == Side::kAlice ? alice_chips() : bob_chips();
  if (bid < 0 || bid > chips) {
    fail(ErrorCode::kIllegalAction, "bid " + std::to_string(bid) + " outside 0.." +
                                        std::to_string(chips));
  }
  pending_[index(player)] = bid;
  if (pending_[0] && pending_[1]) reveal();
}

void PlaySession::reveal() {
  SessionEvent e;
  e.type = SessionEvent::Type::kBids;
  e.alice_bid = *pending_[0];
  e.bob_bid = *pending_[1];
  pending_[0].reset();
  pending_[1].reset();
  history_.push_back(e);
  if (e.alice_bid == e.bob_bid && config_.rule == Rule::kStandard) {
    tied_bid_ = e.alice_bid;
    phase_ = Phase::kAwaitingTieChoice;
    return;
  }
  finish_round(resolve_bids(config_.rule, config_.k(), alice_, holder_, e.alice_bid,
                            e.bob_bid, false));
}

void PlaySession::finish_round(const RoundResult& r) {
  alice_ = r.alice_after;
  holder_ = r.holder_after;
  winner_ = r.winner;
  phase_ = Phase::kAwaitingElection;
}

void PlaySession::resolve_tie(Side player, TieChoice choice) {
  require_phase(Phase::kAwaitingTieChoice);
  if (holder_of(player) != holder_) {
    fail(ErrorCode::kWrongPlayer, "only the token holder decides a tie");
  }
  SessionEvent e;
  e.type = SessionEvent::Type::kTieChoice;
  e.player = player;
  e.tie = choice;
  history_.push_back(e);
  finish_round(resolve_bids(config_.rule, config_.k(), alice_, holder_, tied_bid_, tied_bid_,
                            choice == TieChoice::kSelfWinPassToken));
}

std::vector<Election> PlaySession::legal_elections() const {
  std::vector<Election> out;
  if (phase_ != Phase::kAwaitingElection) return out;
  if (can_move(*winner_)) out.push_back(Election::kSelf);
  if (can_move(other(*winner_))) out.push_back(Election::kForceOpponent);
  return out;
}

std::vector<VertexId> PlaySession::legal_moves() const {
  if (phase_ != Phase::kAwaitingMove) return {};
  auto m = graph().moves(*mover_, position_);
  return {m.begin(), m.end()};
}

void PlaySession::elect_and_move(Side player, Election election, std::optional<VertexId> move) {
  if (phase_ == Phase::kAwaitingMove) {
    if (player != *mover_) fail(ErrorCode::kWrongPlayer, "it is not this player's move");
    if (!move) fail(ErrorCode::kIllegalAction, "a move is required");
    do_move(player, *move, std::nullopt);
    return;
  }
  require_phase(Phase::kAwaitingElection);
  if (player != *winner_) fail(ErrorCode::kWrongPlayer, "only the bid winner elects");
  Side mover = election == Election::kSelf ? player : other(player);
  if (!can_move(mover)) {
    fail(ErrorCode::kIllegalAction, std::string(to_string(mover)) + " has no move here");
  }
  if (move) {
    if (election != Election::kSelf) {
      fail(ErrorCode::kIllegalAction, "the forced player chooses their own move");
    }
    auto m = graph().moves(mover, position_);
    if (std::find(m.begin(), m.end(), *move) == m.end()) {
      fail(ErrorCode::kIllegalAction, "illegal move to vertex " + std::to_string(*move));
    }
  }
  SessionEvent e;
  e.type = SessionEvent::Type::kElection;
  e.player = player;
  e.election = election;
  history_.push_back(e);
  phase_ = Phase::kAwaitingMove;
  mover_ = mover;
  if (move) do_move(mover, *move, std::nullopt);
}

std::optional<int> PlaySession::cell_for(VertexId to) const {
  if (!board_) return std::nullopt;
  Cell mark = *mover_ == Side::kAlice ? Cell::kA : Cell::kB;
  for (int c = 0; c < 9; ++c) {
    if (board_->at(c) != Cell::kEmpty) continue;
    if (ai_->game().ttt->vertex_of(board_->with(c, mark)) == to) return c;
  }
  return std::nullopt;
}

void PlaySession::do_move(Side mover, VertexId to, std::optional<int> cell) {
  auto m = graph().moves(mover, position_);
  if (std::find(m.begin(), m.end(), to) == m.end()) {
    fail(ErrorCode::kIllegalAction, "illegal move to vertex " + std::to_string(to));
  }
  if (board_) {
    if (!cell) cell = cell_for(to);
    Cell mark = mover == Side::kAlice ? Cell::kA : Cell::kB;
    if (!cell || *cell < 0 || *cell > 8 || board_->at(*cell) != Cell::kEmpty ||
        ai_->game().ttt->vertex_of(board_->with(*cell, mark)) != to) {
      fail(ErrorCode::kIllegalAction, "cell does not realize the move");
    }
    board_ = board_->with(*cell, mark);
  }
  SessionEvent e;
  e.type = SessionEvent::Type::kMove;
  e.player = mover;
  e.to = to;
  e.cell = cell;
  history_.push_back(e);
  position_ = to;
  enter_bidding();
}

VertexId PlaySession::cell_target(Side player, int cell) const {
  if (!board_) fail(ErrorCode::kUnsupported, "cell moves need a Tic-Tac-Toe session");
  if (cell < 0 || cell > 8 || board_->at(cell) != Cell::kEmpty) {
    fail(ErrorCode::kIllegalAction, "cell " + std::to_string(cell) + " is not empty");
  }
  auto v = ai_->game().ttt->vertex_of(board_->with(cell, player == Side::kAlice ? Cell::kA
                                                                                : Cell::kB));
  if (!v) fail(ErrorCode::kIllegalAction, "unknown board");
  return *v;
}

void PlaySession::move_cell(Side player, std::optional<Election> election, int cell) {
  if (phase_ == Phase::kAwaitingElection) {
    if (election.value_or(Election::kSelf) != Election::kSelf) {
      fail(ErrorCode::kIllegalAction, "the forced player chooses their own move");
    }
    VertexId to = cell_target(player, cell);
    if (player != *winner_) fail(ErrorCode::kWrongPlayer, "only the bid winner elects");
    auto m = graph().moves(player, position_);
    if (std::find(m.begin(), m.end(), to) == m.end()) {
      fail(ErrorCode::kIllegalAction, "illegal move to cell " + std::to_string(cell));
    }
    elect_and_move(player, Election::kSelf, std::nullopt);
    do_move(player, to, cell);
    return;
  }
  require_phase(Phase::kAwaitingMove);
  if (player != *mover_) fail(ErrorCode::kWrongPlayer, "it is not this player's move");
  do_move(player, cell_target(player, cell), cell);
}

// ---------------------------------------------------------------------------
// AI

bool PlaySession::ai_controls(Side side) const {
  switch (config_.ai) {
    case AiControl::kNone: return false;
    case AiControl::kAlice: return side == Side::kAlice;
    case AiControl::kBob: return side == Side::kBob;
    case AiControl::kBoth: return true;
  }
  return false;
}

bool PlaySession::ai_due() const {
  switch (phase_) {
    case Phase::kAwaitingBids:
      return (ai_controls(Side::kAlice) && !pending_[0]) ||
             (ai_controls(Side::kBob) && !pending_[1]);
    case Phase::kAwaitingTieChoice:
    case Phase::kAwaitingElection:
    case Phase::kAwaitingMove:
      return ai_controls(*actor());
    case Phase::kFinished:
      return false;
  }
  return false;
}

bool PlaySession::ai_step() {
  if (!ai_due()) return false;
  switch (phase_) {
    case Phase::kAwaitingBids: {
      Side s = ai_controls(Side::kAlice) && !pending_[0] ? Side::kAlice : Side::kBob;
      submit_bid(s, ai_bid(s));
      break;
    }
    case Phase::kAwaitingTieChoice: {
      Side s = *actor();
      resolve_tie(s, ai_tie(s));
      break;
    }
    case Phase::kAwaitingElection: {
      Side s = *winner_;
      auto [e, mv] = ai_election(s);
      elect_and_move(s, e, mv);
      break;
    }
    case Phase::kAwaitingMove: {
      Side s = *mover_;
      elect_and_move(s, Election::kSelf, ai_move(s));
      break;
    }
    case Phase::kFinished:
      return false;
  }
  return true;
}

void PlaySession::run_ai() {
  // Two deterministic AIs that revisit a round-start state will cycle
  // forever (a draw by infinite play); stop there instead of looping.
  std::vector<std::tuple<VertexId, int, Holder>> seen;
  for (int steps = 0; steps < 100'000; ++steps) {
    if (config_.ai == AiControl::kBoth && phase_ == Phase::kAwaitingBids && !pending_[0] &&
        !pending_[1]) {
      auto key = std::make_tuple(position_, alice_, holder_);
      if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
      seen.push_back(key);
    }
    if (!ai_step()) return;
  }
}

namespace {

const GameGraph& side_graph(AiContext& ai, Side side) {
  return side == Side::kAlice ? ai.graph() : ai.reversed();
}

}  // namespace

VertexId PlaySession::richman_move(Side side) const {
  auto moves = graph().moves(side, position_);
  VertexId best = moves.front();
  try {
    const RichmanProfile& p = ai_->richman();
    for (VertexId w : moves) {
      bool better = side == Side::kAlice ? p.R[w] < p.R[best] : p.R[w] > p.R[best];
      if (better) best = w;
    }
  } catch (const Error&) {
  }
  return best;
}

int PlaySession::ai_bid(Side side) {
  last_ai_fallback_ = false;
  const int k = config_.k();
  const int chips = side == Side::kAlice ? alice_chips() : bob_chips();
  try {
    if (ai_->uses_thresholds(config_.rule)) {
      auto f = ai_->thresholds(side, k, config_.rule);
      ChipHolding mine = holding(side);
      if (alice_wins((*f)[position_], mine)) {
        return optimal_action(side_graph(*ai_, side), *f, position_, k, mine, config_.rule).bid;
      }
    } else {
      auto t = ai_->table(k, config_.rule);
      auto bids = certified_bids(graph(), *t, round_state(), side);
      if (!bids.empty()) return bids.front().bid;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStateCapExceeded) throw;
  }
  last_ai_fallback_ = true;
  int bid = 0;
  try {
    Rational d = ai_->richman().delta[position_] * k;
    bid = static_cast<int>(std::lround(boost::rational_cast<double>(d)));
  } catch (const Error&) {
  }
  bid = std::clamp(bid, 0, chips);
  if (auto t = fallback_table()) {
    // Nearest bid to the proportional one that cannot hand the opponent a win.
    for (int d = 0; d <= chips; ++d) {
      for (int x : {bid - d, bid + d}) {
        if (x >= 0 && x <= chips && safe_bid(*t, side, x)) return x;
      }
    }
  }
  return bid;
}

TieChoice PlaySession::ai_tie(Side side) {
  const int k = config_.k();
  try {
    if (ai_->uses_thresholds(config_.rule)) {
      auto f = ai_->thresholds(side, k, config_.rule);
      ChipHolding mine = holding(side);
      if (alice_wins((*f)[position_], mine)) {
        BidAction a = optimal_action(side_graph(*ai_, side), *f, position_, k, mine,
                                     config_.rule);
        if (a.bid == tied_bid_) {
          return a.use_advantage_on_tie ? TieChoice::kSelfWinPassToken
                                        : TieChoice::kOpponentWinsKeepToken;
        }
      }
    } else {
      auto t = ai_->table(k, config_.rule);
      for (const OracleBid& b : certified_bids(graph(), *t, round_state(), side)) {
        if (b.bid == tied_bid_) {
          return b.use_advantage_on_tie ? TieChoice::kSelfWinPassToken
                                        : TieChoice::kOpponentWinsKeepToken;
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStateCapExceeded) throw;
  }
  last_ai_fallback_ = true;
  if (auto t = fallback_table()) {
    for (TieChoice c : {TieChoice::kOpponentWinsKeepToken, TieChoice::kSelfWinPassToken}) {
      RoundResult r = resolve_bids(config_.rule, k, alice_, holder_, tied_bid_, tied_bid_,
                                   c == TieChoice::kSelfWinPassToken);
      if (safe_after_round(*t, side, r)) return c;
    }
  }
  return TieChoice::kOpponentWinsKeepToken;
}

std::pair<Election, std::optional<VertexId>> PlaySession::ai_election(Side side) {
  const int k = config_.k();
  try {
    if (ai_->uses_thresholds(config_.rule)) {
      auto f = ai_->thresholds(side, k, config_.rule);
      const GameGraph& g = side_graph(*ai_, side);
      ChipHolding mine = holding(side);
      MoveChoice self = best_moves(g, *f, position_, Side::kAlice);
      if (self.best && alice_wins(*self.best, mine)) {
        return {Election::kSelf, self.argbest.front()};
      }
      MoveChoice opp = best_moves(g, *f, position_, Side::kBob);
      if (opp.best && alice_wins(*opp.best, mine)) return {Election::kForceOpponent, {}};
    } else {
      auto t = ai_->table(k, config_.rule);
      std::uint32_t bound = t->rank(round_state(), side);
      if (bound != 0) {
        ChipState after{position_, alice_, holder_};
        if (auto e = certified_election(graph(), *t, position_, after, side, bound)) {
          return {e->election, e->move};
        }
      }
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStateCapExceeded) throw;
  }
  last_ai_fallback_ = true;
  if (auto t = fallback_table()) {
    const StateOutcome lost = side == Side::kAlice ? StateOutcome::kBobWin : StateOutcome::kAliceWin;
    VertexId preferred = can_move(side) ? richman_move(side) : -1;
    if (preferred >= 0 && t->at(preferred, alice_, holder_) != lost) {
      return {Election::kSelf, preferred};
    }
    for (VertexId w : graph().moves(side, position_)) {
      if (t->at(w, alice_, holder_) != lost) return {Election::kSelf, w};
    }
    auto opp = graph().moves(other(side), position_);
    if (!opp.empty() && std::all_of(opp.begin(), opp.end(), [&](VertexId w) {
          return t->at(w, alice_, holder_) != lost;
        })) {
      return {Election::kForceOpponent, {}};
    }
  }
  if (can_move(side)) return {Election::kSelf, richman_move(side)};
  return {Election::kForceOpponent, {}};
}

VertexId PlaySession::ai_move(Side side) {
  const int k = config_.k();
  try {
    if (ai_->uses_thresholds(config_.rule)) {
      auto f = ai_->thresholds(side, k, config_.rule);
      MoveChoice c = best_moves(side_graph(*ai_, side), *f, position_, Side::kAlice);
      if (!alice_wins(*c.best, holding(side))) last_ai_fallback_ = true;
      return c.argbest.front();
    }
    auto t = ai_->table(k, config_.rule);
    std::uint32_t bound = t->rank(round_state(), side);
    if (bound != 0) {
      ChipState after{position_, alice_, holder_};
      if (auto w = certified_move(graph(), *t, position_, after, side, bound)) return *w;
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kStateCapExceeded) throw;
  }
  last_ai_fallback_ = true;
  VertexId preferred = richman_move(side);
  if (auto t = fallback_table()) {
    const StateOutcome lost = side == Side::kAlice ? StateOutcome::kBobWin : StateOutcome::kAliceWin;
    if (t->at(preferred, alice_, holder_) == lost) {
      for (VertexId w : graph().moves(side, position_)) {
        if (t->at(w, alice_, holder_) != lost) return w;
      }
    }
  }
  return preferred;
}

std::shared_ptr<const OutcomeTable> PlaySession::fallback_table() const {
  const std::size_t states = graph().size() * static_cast<std::size_t>(config_.k() + 1) * 2;
  if (states > 400'000) return nullptr;
  try {
    return ai_->table(config_.k(), config_.rule);
  } catch (const Error&) {
    return nullptr;
  }
}

bool PlaySession::safe_after_round(const OutcomeTable& t, Side me, const RoundResult& r) const {
  const StateOutcome lost = me == Side::kAlice ? StateOutcome::kBobWin : StateOutcome::kAliceWin;
  auto safe = [&](VertexId w) { return t.at(w, r.alice_after, r.holder_after) != lost; };
  auto mine = graph().moves(me, position_);
  auto theirs = graph().moves(other(me), position_);
  bool some_mine = std::any_of(mine.begin(), mine.end(), safe);
  bool all_theirs = std::all_of(theirs.begin(), theirs.end(), safe);
  if (r.winner == me) return some_mine || (!theirs.empty() && all_theirs);
  return all_theirs && (mine.empty() || some_mine);
}

bool PlaySession::safe_bid(const OutcomeTable& t, Side me, int bid) const {
  const int k = config_.k();
  const int opp_chips = me == Side::kAlice ? bob_chips() : alice_chips();
  const bool i_hold = holder_ == holder_of(me);
  for (int y = 0; y <= opp_chips; ++y) {
    int a = me == Side::kAlice ? bid : y;
    int b = me == Side::kAlice ? y : bid;
    if (a == b && config_.rule == Rule::kStandard) {
      bool s0 = safe_after_round(t, me, resolve_bids(config_.rule, k, alice_, holder_, a, b, false));
      bool s1 = safe_after_round(t, me, resolve_bids(config_.rule, k, alice_, holder_, a, b, true));
      if (i_hold ? !(s0 || s1) : !(s0 && s1)) return false;
    } else if (!safe_after_round(t, me, resolve_bids(config_.rule, k, alice_, holder_, a, b,
                                                     false))) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

Json event_json(const SessionEvent& e) {
  Json j;
  switch (e.type) {
    case SessionEvent::Type::kBids:
      j["type"] = "bids";
      j["alice"] = e.alice_bid;
      j["bob"] = e.bob_bid;
      break;
    case SessionEvent::Type::kTieChoice:
      j["type"] = "tie_choice";
      j["player"] = to_string(e.player);
      j["choice"] = to_string(e.tie);
      break;
    case SessionEvent::Type::kElection:
      j["type"] = "election";
      j["player"] = to_string(e.player);
      j["election"] = to_string(e.election);
      break;
    case SessionEvent::Type::kMove:
      j["type"] = "move";
      j["player"] = to_string(e.player);
      j["to"] = e.to;
      if (e.cell) j["cell"] = *e.cell;
      break;
  }
  return j;
}

SessionEvent event_from(const Json& j) {
  SessionEvent e;
  const std::string type = j.at("type").get<std::string>();
  if (type == "bids") {
    e.type = SessionEvent::Type::kBids;
    e.alice_bid = j.at("alice").get<int>();
    e.bob_bid = j.at("bob").get<int>();
  } else if (type == "tie_choice") {
    e.type = SessionEvent::Type::kTieChoice;
    e.player = parse_side(j.at("player").get<std::string>());
    e.tie = parse_tie(j.at("choice").get<std::string>());
  } else if (type == "election") {
    e.type = SessionEvent::Type::kElection;
    e.player = parse_side(j.at("player").get<std::string>());
    e.election = parse_election(j.at("election").get<std::string>());
  } else if (type == "move") {
    e.type = SessionEvent::Type::kMove;
    e.player = parse_side(j.at("player").get<std::string>());
    e.to = j.at("to").get<VertexId>();
    if (j.contains("cell")) e.cell = j.at("cell").get<int>();
  } else {
    fail(ErrorCode::kParse, "unknown event type '" + type + "'");
  }
  return e;
}

Json config_json(const SessionConfig& c) {
  Json j;
  j["game"] = c.game;
  j["rule"] = to_string(c.rule);
  j["k"] = c.k();
  j["split"] = split_text(c);
  j["ai"] = to_string(c.ai);
  j["hints"] = c.hints;
  return j;
}

SessionConfig config_from(const Json& j) {
  SessionConfig c;
  if (j.contains("game")) c.game = j.at("game").get<std::string>();
  if (j.contains("rule")) c.rule = parse_rule(j.at("rule").get<std::string>());
  if (j.contains("split")) {
    apply_split(c, j.at("split").get<std::string>());
  } else {
    if (j.contains("alice")) c.alice = j.at("alice").get<int>();
    if (j.contains("bob")) c.bob = j.at("bob").get<int>();
    if (j.contains("holder")) {
      c.holder = holder_of(parse_side(j.at("holder").get<std::string>()));
    }
    if (j.contains("k") && !j.contains("alice") && !j.contains("bob")) {
      int k = j.at("k").get<int>();
      c.alice = (k + 1) / 2;
      c.bob = k / 2;
    }
  }
  if (j.contains("k") && j.at("k").get<int>() != c.k()) {
    fail(ErrorCode::kInvalidArgument, "split does not add up to k");
  }
  if (j.contains("ai")) c.ai = parse_ai_control(j.at("ai").get<std::string>());
  if (j.contains("hints")) c.hints = j.at("hints").get<bool>();
  if (c.rule == Rule::kLadiesFirst) c.holder = Holder::kNone;
  return c;
}

template <typename F>
auto parse_guard(F&& f) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, e.what());
  }
}

}  // namespace

std::string events_to_json(const std::vector<SessionEvent>& events) {
  Json j = Json::array();
  for (const auto& e : events) j.push_back(event_json(e));
  return j.dump();
}

std::vector<SessionEvent> events_from_json(std::string_view text) {
  return parse_guard([&] {
    std::vector<SessionEvent> out;
    for (const auto& e : Json::parse(text)) out.push_back(event_from(e));
    return out;
  });
}

SessionConfig config_from_json(std::string_view text) {
  return parse_guard([&] { return config_from(Json::parse(text)); });
}

std::string config_to_json(const SessionConfig& config) { return config_json(config).dump(); }

std::string PlaySession::to_json(bool reveal_pending) const {
  Json j;
  j["schema"] = "bidsession-1";
  j["config"] = config_json(config_);
  Json st;
  st["phase"] = to_string(phase_);
  st["position"] = position_;
  st["label"] = graph().label(position_);
  if (board_) st["board"] = board_->to_string();
  st["alice"] = to_string(holding(Side::kAlice));
  st["bob"] = to_string(holding(Side::kBob));
  st["alice_chips"] = alice_chips();
  st["bob_chips"] = bob_chips();
  st["holder"] = to_string(holder_);
  if (auto a = actor()) st["actor"] = to_string(*a);
  if (phase_ == Phase::kAwaitingBids) {
    st["committed"] = {{"alice", committed(Side::kAlice)}, {"bob", committed(Side::kBob)}};
  }
  if (phase_ == Phase::kAwaitingTieChoice) st["tied_bid"] = tied_bid_;
  if (outcome_) st["outcome"] = to_string(*outcome_);
  j["state"] = st;
  Json legal;
  if (phase_ == Phase::kAwaitingElection) {
    Json el = Json::array();
    for (Election e : legal_elections()) el.push_back(to_string(e));
    legal["elections"] = el;
    auto sm = graph().moves(*winner_, position_);
    legal["self_moves"] = std::vector<VertexId>(sm.begin(), sm.end());
  } else if (phase_ == Phase::kAwaitingMove) {
    legal["moves"] = legal_moves();
  } else if (phase_ == Phase::kAwaitingTieChoice) {
    legal["tie_choices"] = {"self_win", "opponent_wins"};
  } else if (phase_ == Phase::kAwaitingBids) {
    legal["max_bid"] = {{"alice", alice_chips()}, {"bob", bob_chips()}};
  }
  if (board_ && (phase_ == Phase::kAwaitingElection || phase_ == Phase::kAwaitingMove)) {
    Side who = phase_ == Phase::kAwaitingMove ? *mover_ : *winner_;
    Json cells = Json::array();
    auto m = graph().moves(who, position_);
    for (int c = 0; c < 9; ++c) {
      if (board_->at(c) != Cell::kEmpty) continue;
      auto v = ai_->game().ttt->vertex_of(board_->with(c, who == Side::kAlice ? Cell::kA
                                                                              : Cell::kB));
      if (v && std::find(m.begin(), m.end(), *v) != m.end()) cells.push_back(c);
    }
    legal["cells"] = cells;
  }
  j["legal"] = legal;
  Json ev = Json::array();
  for (const auto& e : history_) ev.push_back(event_json(e));
  j["events"] = ev;
  if (reveal_pending) {
    Json p;
    if (pending_[0]) p["alice"] = *pending_[0];
    if (pending_[1]) p["bob"] = *pending_[1];
    j["pending"] = p.is_null() ? Json::object() : p;
  }
  return j.dump();
}

std::string PlaySession::hints_json() const {
  Json j = Json::object();
  if (!config_.hints) return j.dump();
  const int k = config_.k();
  auto* ai = ai_.get();
  try {
    if (ai->uses_thresholds(config_.rule)) {
      auto f = ai->thresholds(Side::kAlice, k, config_.rule);
      j["f"] = threshold_text((*f)[position_], k);
      Json succ = Json::array();
      for (Side s : {Side::kAlice, Side::kBob}) {
        for (VertexId w : graph().moves(s, position_)) {
          Json h;
          h["side"] = to_string(s);
          h["to"] = w;
          h["label"] = graph().label(w);
          h["f"] = threshold_text((*f)[w], k);
          if (board_) {
            Json cells = Json::array();
            for (int c = 0; c < 9; ++c) {
              if (board_->at(c) != Cell::kEmpty) continue;
              if (ai->game().ttt->vertex_of(
                      board_->with(c, s == Side::kAlice ? Cell::kA : Cell::kB)) == w) {
                cells.push_back(c);
              }
            }
            h["cells"] = cells;
          }
          succ.push_back(h);
        }
      }
      j["successors"] = succ;
    } else {
      auto t = ai->table(k, config_.rule);
      j["outcome"] = to_string(t->at(round_state()));
    }
  } catch (const Error& e) {
    j["error"] = e.what();
  }
  return j.dump();
}

void PlaySession::apply(const SessionEvent& e) {
  switch (e.type) {
    case SessionEvent::Type::kBids:
      require_phase(Phase::kAwaitingBids);
      if (pending_[0] || pending_[1]) fail(ErrorCode::kWrongPhase, "a bid is already pending");
      submit_bid(Side::kAlice, e.alice_bid);
      submit_bid(Side::kBob, e.bob_bid);
      break;
    case SessionEvent::Type::kTieChoice:
      resolve_tie(e.player, e.tie);
      break;
    case SessionEvent::Type::kElection:
      elect_and_move(e.player, e.election, std::nullopt);
      break;
    case SessionEvent::Type::kMove:
      require_phase(Phase::kAwaitingMove);
      if (e.player != *mover_) fail(ErrorCode::kWrongPlayer, "it is not this player's move");
      do_move(e.player, e.to, e.cell);
      break;
  }
}

PlaySession PlaySession::replay(const SessionConfig& config,
                                const std::vector<SessionEvent>& events,
                                std::shared_ptr<AiContext> ai) {
  SessionConfig quiet = config;
  quiet.auto_ai = false;
  PlaySession s(quiet, std::move(ai));
  for (const auto& e : events) s.apply(e);
  s.config_.auto_ai = config.auto_ai;
  return s;
}

PlaySession PlaySession::from_json(std::string_view doc, std::shared_ptr<AiContext> ai) {
  return parse_guard([&] {
    Json j = Json::parse(doc);
    if (j.value("schema", "") != "bidsession-1") {
      fail(ErrorCode::kParse, "not a bidsession-1 document");
    }
    SessionConfig c = config_from(j.at("config"));
    std::vector<SessionEvent> events;
    for (const auto& e : j.at("events")) events.push_back(event_from(e));
    PlaySession s = replay(c, events, ai);
    s.config_.auto_ai = false;
    if (j.contains("pending")) {
      const Json& p = j.at("pending");
      if (p.contains("alice")) s.submit_bid(Side::kAlice, p.at("alice").get<int>());
      if (p.contains("bob")) s.submit_bid(Side::kBob, p.at("bob").get<int>());
    }
    s.config_.auto_ai = true;
    return s;
  });
}

}  // namespace bidding
