#include "bidding/oracle.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "bidding/error.hpp"

namespace bidding {

std::string_view to_string(Holder h) {
  switch (h) {
    case Holder::kAlice: return "alice";
    case Holder::kBob: return "bob";
    case Holder::kNone: return "none";
  }
  return "?";
}

std::string_view to_string(StateOutcome o) {
  switch (o) {
    case StateOutcome::kAliceWin: return "alice";
    case StateOutcome::kBobWin: return "bob";
    case StateOutcome::kDraw: return "draw";
  }
  return "?";
}

MoveFilter MoveFilter::richman_stable(const GameGraph& g, const RichmanProfile& profile,
                                      Side side, std::optional<std::vector<VertexId>> only_at) {
  MoveFilter f;
  std::vector<VertexId> where;
  if (only_at) {
    where = *only_at;
  } else {
    for (std::size_t v = 0; v < g.size(); ++v) where.push_back(static_cast<VertexId>(v));
  }
  for (VertexId v : where) {
    auto moves = g.moves(side, v);
    if (moves.empty()) continue;
    Rational best = profile.R[moves[0]];
    for (VertexId w : moves) {
      best = side == Side::kAlice ? std::min(best, profile.R[w]) : std::max(best, profile.R[w]);
    }
    std::vector<VertexId> keep;
    for (VertexId w : moves) {
      if (profile.R[w] == best) keep.push_back(w);
    }
    f.restrict(side, v, std::move(keep));
  }
  return f;
}

void MoveFilter::restrict(Side side, VertexId v, std::vector<VertexId> allowed) {
  std::sort(allowed.begin(), allowed.end());
  allowed_[index(side)][v] = std::move(allowed);
}

std::span<const VertexId> MoveFilter::moves(const GameGraph& g, Side side, VertexId v) const {
  const auto& m = allowed_[index(side)];
  auto it = m.find(v);
  if (it == m.end()) return g.moves(side, v);
  return it->second;
}

bool OutcomeTable::has_holder(Holder h) const {
  return rule_ == Rule::kLadiesFirst ? h == Holder::kNone : h != Holder::kNone;
}

std::vector<Holder> OutcomeTable::holders() const {
  if (rule_ == Rule::kLadiesFirst) return {Holder::kNone};
  return {Holder::kAlice, Holder::kBob};
}

std::size_t OutcomeTable::index(const ChipState& s) const {
  if (s.vertex < 0 || static_cast<std::size_t>(s.vertex) >= vertices_ || s.alice < 0 ||
      s.alice > k_ || !has_holder(s.holder)) {
    fail(ErrorCode::kInvalidArgument, "chip state outside the table");
  }
  std::size_t h = rule_ == Rule::kLadiesFirst ? 0 : static_cast<std::size_t>(s.holder);
  std::size_t hn = rule_ == Rule::kLadiesFirst ? 1 : 2;
  return (static_cast<std::size_t>(s.vertex) * (k_ + 1) + s.alice) * hn + h;
}

std::uint32_t OutcomeTable::rank(const ChipState& s, Side side) const {
  return side == Side::kAlice ? alice_rank_[index(s)] : bob_rank_[index(s)];
}

RoundResult resolve_bids(Rule rule, int k, int alice, Holder holder, int alice_bid,
                         int bob_bid, bool holder_self_wins) {
  if (alice_bid < 0 || bob_bid < 0 || alice_bid > alice || bob_bid > k - alice) {
    fail(ErrorCode::kIllegalAction, "bid exceeds the bidder's chips");
  }
  auto pays = [&](Side w, int amount) {
    return w == Side::kAlice ? alice - amount : alice + amount;
  };
  auto loser_holds = [](Side w) { return w == Side::kAlice ? Holder::kBob : Holder::kAlice; };
  if (alice_bid != bob_bid) {
    Side w = alice_bid > bob_bid ? Side::kAlice : Side::kBob;
    int amount = std::max(alice_bid, bob_bid);
    Holder after = rule == Rule::kStandard      ? holder
                   : rule == Rule::kLadiesFirst ? Holder::kNone
                                                : loser_holds(w);
    return {w, pays(w, amount), after};
  }
  const int x = alice_bid;
  switch (rule) {
    case Rule::kStandard: {
      Side h = holder == Holder::kAlice ? Side::kAlice : Side::kBob;
      Side w = holder_self_wins ? h : other(h);
      Holder after = holder_self_wins ? loser_holds(h) : holder;
      return {w, pays(w, x), after};
    }
    case Rule::kMakeItTakeIt: {
      Side w = holder == Holder::kAlice ? Side::kBob : Side::kAlice;
      return {w, pays(w, x), holder};
    }
    case Rule::kLosersBall: {
      Side w = holder == Holder::kAlice ? Side::kAlice : Side::kBob;
      return {w, pays(w, x), loser_holds(w)};
    }
    case Rule::kLadiesFirst:
      return {Side::kAlice, pays(Side::kAlice, x), Holder::kNone};
  }
  fail(ErrorCode::kInvalidArgument, "unknown rule");
}

// Retrograde solver for the two reachability fixed points. Each side's win
// set grows monotonically; a state's rank is its insertion counter, so every
// state a winning action relies on has a smaller rank.
class OracleSolver {
 public:
  OracleSolver(const GameGraph& g, int k, Rule rule, const MoveFilter& filter,
               OutcomeTable& table)
      : g_(g), k_(k), rule_(rule), filter_(filter), t_(table), out_(&table) {
    hn_ = rule == Rule::kLadiesFirst ? 1 : 2;
  }
  // Read-only view over a solved table, for certification queries.
  OracleSolver(const GameGraph& g, const OutcomeTable& table, const MoveFilter& filter)
      : g_(g), k_(table.k()), rule_(table.rule()), filter_(filter), t_(table) {
    hn_ = rule_ == Rule::kLadiesFirst ? 1 : 2;
  }

  void init(const OracleOptions& options) {
    if (k_ < 0) fail(ErrorCode::kInvalidArgument, "chip total must be >= 0");
    std::size_t states = g_.size() * static_cast<std::size_t>(k_ + 1) * hn_;
    if (states > options.state_cap) {
      fail(ErrorCode::kStateCapExceeded,
           std::to_string(states) + " chip states exceed the cap of " +
               std::to_string(options.state_cap) +
               "; use a smaller chip total or the threshold recursion");
    }
    out_->rule_ = rule_;
    out_->k_ = k_;
    out_->vertices_ = g_.size();
    out_->outcome_.assign(states, StateOutcome::kDraw);
    out_->alice_rank_.assign(states, 0);
    out_->bob_rank_.assign(states, 0);
  }

  void solve() {
    solve_side(Side::kAlice);
    solve_side(Side::kBob);
    for (std::size_t i = 0; i < out_->outcome_.size(); ++i) {
      bool a = out_->alice_rank_[i] != 0;
      bool b = out_->bob_rank_[i] != 0;
      if (a && b) throw std::logic_error("oracle: state won by both players");
      out_->outcome_[i] = a ? StateOutcome::kAliceWin : b ? StateOutcome::kBobWin : StateOutcome::kDraw;
    }
  }

  // Membership of (w, alice, holder) in `side`'s win set, counting only
  // states ranked below `bound` (0 = no bound).
  bool member(Side side, VertexId w, int alice, Holder h, std::uint32_t bound) const {
    if (auto o = g_.terminal(w)) {
      return *o == (side == Side::kAlice ? Outcome::kAliceWin : Outcome::kBobWin);
    }
    std::uint32_t r = t_.rank({w, alice, h}, side);
    return r != 0 && (bound == 0 || r < bound);
  }

  std::span<const VertexId> moves(Side side, VertexId v) const {
    return filter_.moves(g_, side, v);
  }

  // After `winner` takes the bid at v with chips (alice, h): whether the
  // reacher gets into its set. The bid winner picks the election.
  bool good_after(Side reacher, Side winner, VertexId v, int alice, Holder h,
                  std::uint32_t bound) const {
    auto reach_any = [&](Side mover) {
      for (VertexId w : moves(mover, v)) {
        if (member(reacher, w, alice, h, bound)) return true;
      }
      return false;
    };
    auto reach_all = [&](Side mover) {
      for (VertexId w : moves(mover, v)) {
        if (!member(reacher, w, alice, h, bound)) return false;
      }
      return true;
    };
    Side opp = other(reacher);
    bool rm = !moves(reacher, v).empty();
    bool om = !moves(opp, v).empty();
    if (!rm && !om) return false;
    if (winner == reacher) return (rm && reach_any(reacher)) || (om && reach_all(opp));
    return (!om || reach_all(opp)) && (!rm || reach_any(reacher));
  }

  Holder holder_at(int hi) const {
    return hn_ == 1 ? Holder::kNone : hi == 0 ? Holder::kAlice : Holder::kBob;
  }
  static Holder holder_of(Side s) { return s == Side::kAlice ? Holder::kAlice : Holder::kBob; }

  // Per-vertex tables of good_after for both winners, indexed by the
  // reacher's chips and the holder.
  struct Goods {
    std::vector<std::uint8_t> win;   // reacher took the bid
    std::vector<std::uint8_t> lose;  // opponent took the bid
    std::vector<std::uint8_t> lose_suffix;  // lose[j..k] all good
    int k = 0;
    std::size_t at(int hi, int r) const { return static_cast<std::size_t>(hi) * (k + 1) + r; }
  };

  void fill_goods(Side reacher, VertexId v, std::uint32_t bound, Goods& out) const {
    out.k = k_;
    std::size_t n = static_cast<std::size_t>(hn_) * (k_ + 1);
    out.win.assign(n, 0);
    out.lose.assign(n, 0);
    out.lose_suffix.assign(n + hn_, 1);
    for (int hi = 0; hi < hn_; ++hi) {
      Holder h = holder_at(hi);
      for (int r = 0; r <= k_; ++r) {
        int alice = reacher == Side::kAlice ? r : k_ - r;
        out.win[out.at(hi, r)] = good_after(reacher, reacher, v, alice, h, bound);
        out.lose[out.at(hi, r)] = good_after(reacher, other(reacher), v, alice, h, bound);
      }
    }
    // lose_suffix[hi*(k+2) + j]: lose[hi][j..k] all good.
    for (int hi = 0; hi < hn_; ++hi) {
      std::size_t base = static_cast<std::size_t>(hi) * (k_ + 2);
      out.lose_suffix[base + k_ + 1] = 1;
      for (int r = k_; r >= 0; --r) {
        out.lose_suffix[base + r] = out.lose_suffix[base + r + 1] && out.lose[out.at(hi, r)];
      }
    }
  }

  int hidx(Holder h) const { return hn_ == 1 ? 0 : h == Holder::kAlice ? 0 : 1; }

  // Holder after a strict bid win by `w`.
  Holder strict_holder(Holder h, Side w) const {
    switch (rule_) {
      case Rule::kStandard: return h;
      case Rule::kLadiesFirst: return Holder::kNone;
      default: return holder_of(other(w));
    }
  }

  // Whether bidding x with reacher chips r from holder h wins, given the
  // reacher's tie decision. `decision` is ignored unless the reacher holds
  // the standard-rule advantage.
  bool bid_works(const Goods& gd, Side reacher, int r, Holder h, int x, bool decision) const {
    Side opp = other(reacher);
    int opp_chips = k_ - r;
    if (x > 0 && !gd.win[gd.at(hidx(strict_holder(h, reacher)), r - x)]) return false;
    {
      int hi = hidx(strict_holder(h, opp));
      int j = r + x + 1;
      if (j <= k_ && x + 1 <= opp_chips &&
          !gd.lose_suffix[static_cast<std::size_t>(hi) * (k_ + 2) + j]) {
        return false;
      }
    }
    if (x > opp_chips) return true;
    auto outcome_ok = [&](Side w, Holder after) {
      return w == reacher ? gd.win[gd.at(hidx(after), r - x)] != 0
                          : gd.lose[gd.at(hidx(after), r + x)] != 0;
    };
    switch (rule_) {
      case Rule::kStandard: {
        Side hs = h == Holder::kAlice ? Side::kAlice : Side::kBob;
        Holder passed = holder_of(other(hs));
        if (hs == reacher) {
          return decision ? outcome_ok(reacher, passed) : outcome_ok(opp, h);
        }
        return outcome_ok(opp, passed) && outcome_ok(reacher, h);
      }
      case Rule::kMakeItTakeIt: {
        Side w = h == Holder::kAlice ? Side::kBob : Side::kAlice;
        return outcome_ok(w, h);
      }
      case Rule::kLosersBall: {
        Side w = h == Holder::kAlice ? Side::kAlice : Side::kBob;
        return outcome_ok(w, holder_of(other(w)));
      }
      case Rule::kLadiesFirst:
        return outcome_ok(Side::kAlice, Holder::kNone);
    }
    return false;
  }

  bool reacher_holds_choice(Side reacher, Holder h) const {
    return rule_ == Rule::kStandard && h == holder_of(reacher);
  }

  bool state_wins(const Goods& gd, Side reacher, int r, Holder h) const {
    bool choice = reacher_holds_choice(reacher, h);
    for (int x = 0; x <= r; ++x) {
      if (bid_works(gd, reacher, r, h, x, true)) return true;
      if (choice && bid_works(gd, reacher, r, h, x, false)) return true;
    }
    return false;
  }

  void solve_side(Side side) {
    auto& ranks = side == Side::kAlice ? out_->alice_rank_ : out_->bob_rank_;
    std::uint32_t counter = 1;
    Goods gd;
    // Returns whether any state at v was added.
    auto evaluate = [&](VertexId v) {
      fill_goods(side, v, 0, gd);
      bool changed = false;
      for (int hi = 0; hi < hn_; ++hi) {
        Holder h = holder_at(hi);
        for (int r = 0; r <= k_; ++r) {
          int alice = side == Side::kAlice ? r : k_ - r;
          std::size_t idx = t_.index({v, alice, h});
          if (ranks[idx] != 0) continue;
          if (state_wins(gd, side, r, h)) {
            ranks[idx] = ++counter;
            changed = true;
          }
        }
      }
      return changed;
    };

    const std::size_t n = g_.size();
    for (std::size_t v = 0; v < n; ++v) {
      auto id = static_cast<VertexId>(v);
      if (auto o = g_.terminal(id)) {
        bool won = *o == (side == Side::kAlice ? Outcome::kAliceWin : Outcome::kBobWin);
        if (!won) continue;
        for (int a = 0; a <= k_; ++a) {
          for (int hi = 0; hi < hn_; ++hi) ranks[t_.index({id, a, holder_at(hi)})] = 1;
        }
      }
    }
    if (g_.bounded()) {
      for (VertexId v : g_.successors_first()) {
        if (!g_.is_terminal(v)) evaluate(v);
      }
      return;
    }
    std::vector<std::vector<VertexId>> preds(n);
    for (std::size_t v = 0; v < n; ++v) {
      for (Side s : {Side::kAlice, Side::kBob}) {
        for (VertexId w : g_.moves(s, static_cast<VertexId>(v))) {
          preds[w].push_back(static_cast<VertexId>(v));
        }
      }
    }
    std::deque<VertexId> work;
    std::vector<std::uint8_t> queued(n, 0);
    for (std::size_t v = 0; v < n; ++v) {
      if (!g_.is_terminal(static_cast<VertexId>(v))) {
        work.push_back(static_cast<VertexId>(v));
        queued[v] = 1;
      }
    }
    while (!work.empty()) {
      VertexId v = work.front();
      work.pop_front();
      queued[v] = 0;
      if (!evaluate(v)) continue;
      for (VertexId p : preds[v]) {
        if (!queued[p] && !g_.is_terminal(p)) {
          queued[p] = 1;
          work.push_back(p);
        }
      }
    }
  }

  const GameGraph& g_;
  int k_;
  Rule rule_;
  const MoveFilter& filter_;
  const OutcomeTable& t_;
  OutcomeTable* out_ = nullptr;
  int hn_ = 2;
};

OutcomeTable solve_restricted(const GameGraph& g, int k, Rule rule, const MoveFilter& filter,
                              const OracleOptions& options) {
  OutcomeTable t;
  OracleSolver solver(g, k, rule, filter, t);
  solver.init(options);
  solver.solve();
  return t;
}

OutcomeTable solve_chip_states(const GameGraph& g, int k, Rule rule,
                               const OracleOptions& options) {
  return solve_restricted(g, k, rule, MoveFilter::none(), options);
}

namespace {

Holder holder_from_marker(ChipHolding alice, Rule rule) {
  switch (rule) {
    case Rule::kStandard:
    case Rule::kLosersBall:
      if (alice.marker == Marker::kMinusEps) break;
      return alice.marker == Marker::kStar ? Holder::kAlice : Holder::kBob;
    case Rule::kMakeItTakeIt:
      if (alice.marker == Marker::kStar) break;
      return alice.marker == Marker::kMinusEps ? Holder::kAlice : Holder::kBob;
    case Rule::kLadiesFirst:
      if (alice.marker != Marker::kPlain) break;
      return Holder::kNone;
  }
  fail(ErrorCode::kInvalidArgument,
       "holding " + to_string(alice) + " has no meaning under " + std::string(to_string(rule)));
}

}  // namespace

StateOutcome outcome(const GameGraph& g, ChipHolding alice, int bob, Rule rule) {
  return outcome(g, alice.amount, bob, holder_from_marker(alice, rule), rule);
}

StateOutcome outcome(const GameGraph& g, int alice, int bob, Holder holder, Rule rule) {
  if (alice < 0 || bob < 0) fail(ErrorCode::kInvalidArgument, "chip counts must be >= 0");
  OutcomeTable t = solve_chip_states(g, alice + bob, rule);
  return t.at(g.start(), alice, holder);
}

std::shared_ptr<const OutcomeTable> Oracle::table(int k, Rule rule) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = std::make_pair(k, rule);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto t = std::make_shared<const OutcomeTable>(solve_chip_states(*graph_, k, rule, options_));
  cache_[key] = t;
  return t;
}

StateOutcome Oracle::outcome(int alice, int bob, Holder holder, Rule rule) {
  return table(alice + bob, rule)->at(graph_->start(), alice, holder);
}

std::vector<OracleBid> certified_bids(const GameGraph& g, const OutcomeTable& table,
                                      const ChipState& s, Side side, const MoveFilter& filter) {
  std::vector<OracleBid> out;
  std::uint32_t bound = table.rank(s, side);
  if (bound == 0 || g.is_terminal(s.vertex)) return out;
  OracleSolver view(g, table, filter);
  OracleSolver::Goods gd;
  view.fill_goods(side, s.vertex, bound, gd);
  int r = side == Side::kAlice ? s.alice : table.k() - s.alice;
  bool choice = view.reacher_holds_choice(side, s.holder);
  for (int x = 0; x <= r; ++x) {
    if (view.bid_works(gd, side, r, s.holder, x, true)) {
      out.push_back({x, choice});
    }
    if (choice && view.bid_works(gd, side, r, s.holder, x, false)) {
      out.push_back({x, false});
    }
  }
  return out;
}

std::optional<OracleElection> certified_election(const GameGraph& g, const OutcomeTable& table,
                                                 VertexId v, const ChipState& after, Side side,
                                                 std::uint32_t rank_bound,
                                                 const MoveFilter& filter) {
  OracleSolver view(g, table, filter);
  for (VertexId w : filter.moves(g, side, v)) {
    if (view.member(side, w, after.alice, after.holder, rank_bound)) {
      return OracleElection{Election::kSelf, w};
    }
  }
  auto opp = filter.moves(g, other(side), v);
  if (!opp.empty()) {
    bool all = std::all_of(opp.begin(), opp.end(), [&](VertexId w) {
      return view.member(side, w, after.alice, after.holder, rank_bound);
    });
    if (all) return OracleElection{Election::kForceOpponent, std::nullopt};
  }
  return std::nullopt;
}

std::optional<VertexId> certified_move(const GameGraph& g, const OutcomeTable& table,
                                       VertexId v, const ChipState& after, Side side,
                                       std::uint32_t rank_bound, const MoveFilter& filter) {
  OracleSolver view(g, table, filter);
  for (VertexId w : filter.moves(g, side, v)) {
    if (view.member(side, w, after.alice, after.holder, rank_bound)) return w;
  }
  return std::nullopt;
}

}  // namespace bidding
