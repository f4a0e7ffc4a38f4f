#include <gtest/gtest.h>

#include <random>

#include "bidding/builders.hpp"
#include "bidding/error.hpp"
#include "bidding/game_spec.hpp"
#include "bidding/oracle.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"
#include "bidding/ttt.hpp"
#include "test_support.hpp"

namespace bidding {
namespace {

constexpr auto kAW = StateOutcome::kAliceWin;
constexpr auto kBW = StateOutcome::kBobWin;
constexpr auto kDraw = StateOutcome::kDraw;

StateOutcome at_start(const std::string& spec, int alice, int bob, Holder h,
                      Rule rule = Rule::kStandard) {
  return outcome(parse_game_spec(spec), alice, bob, h, rule);
}

TEST(Oracle, TugExamples) {
  EXPECT_EQ(at_start("tug:2", 1, 1, Holder::kAlice), kAW);
  // Tug is self-mirroring, so Bob holding the star is Bob's win, not a draw.
  EXPECT_EQ(at_start("tug:2", 1, 1, Holder::kBob), kBW);
  EXPECT_EQ(at_start("tug:2", 2, 2, Holder::kAlice), kDraw);
  EXPECT_EQ(at_start("tug:2", 3, 1, Holder::kAlice), kAW);
}

TEST(Oracle, UltimatumExamples) {
  EXPECT_EQ(at_start("ult:1", 1, 1, Holder::kAlice), kAW);
  EXPECT_EQ(at_start("ult:2", 3, 2, Holder::kAlice), kAW);
  EXPECT_EQ(at_start("ult:2", 2, 2, Holder::kAlice), kAW);
  EXPECT_EQ(at_start("ult:2", 1, 1, Holder::kAlice), kDraw);
}

TEST(Oracle, HoldingQueries) {
  GameGraph a = parse_game_spec("A");
  for (int k = 0; k <= 4; ++k) {
    EXPECT_EQ(outcome(a, ChipHolding::star(k), 2, Rule::kStandard), kAW);
    EXPECT_EQ(outcome(a, ChipHolding::plain(k), 0, Rule::kLadiesFirst), kAW);
  }
  GameGraph bz = parse_game_spec("bidzero:3");
  EXPECT_EQ(outcome(bz, ChipHolding::plain(7), 0, Rule::kStandard), kAW);
  EXPECT_NE(outcome(bz, ChipHolding::plain(6), 0, Rule::kStandard), kAW);
  EXPECT_THROW(outcome(bz, ChipHolding::star(2), 0, Rule::kMakeItTakeIt), Error);
}

// Every Alice first action (bid, tie decision) that wins against every reply.
std::vector<std::pair<int, bool>> winning_first_actions(const GameGraph& g, int k,
                                                        ChipHolding alice) {
  auto f = threshold_bounded(g, k, Rule::kStandard);
  std::vector<std::pair<int, bool>> out;
  for (int x = 0; x <= alice.amount; ++x) {
    for (bool use : {false, true}) {
      if (use && alice.marker != Marker::kStar) continue;
      bool any = false;
      for (Election e : {Election::kSelf, Election::kForceOpponent}) {
        std::vector<std::optional<VertexId>> moves = {std::nullopt};
        if (e == Election::kSelf) {
          moves.clear();
          for (VertexId w : g.red_moves(g.start())) moves.push_back(w);
        } else if (g.blue_moves(g.start()).empty()) {
          continue;
        }
        for (auto m : moves) {
          BidAction a{x, use, e, m, true};
          any = any || action_preserves_win(g, f, g.start(), k, alice, Rule::kStandard, a);
        }
      }
      if (any) out.push_back({x, use});
    }
  }
  return out;
}

TEST(Oracle, SecondMoveWinsUniqueLine) {
  GameGraph smw = parse_game_spec("smw");
  for (int c = 0; c <= 5; ++c) {
    ASSERT_EQ(outcome(smw, c, c, Holder::kAlice, Rule::kStandard), kAW) << c;
    EXPECT_EQ(outcome(smw, c, c, Holder::kBob, Rule::kStandard), kBW) << c;
    auto lines = winning_first_actions(smw, 2 * c, ChipHolding::star(c));
    ASSERT_EQ(lines.size(), 1u) << c;
    EXPECT_EQ(lines[0], std::make_pair(0, false));

    auto t = solve_chip_states(smw, 2 * c, Rule::kStandard);
    auto bids = certified_bids(smw, t, {smw.start(), c, Holder::kAlice}, Side::kAlice);
    ASSERT_FALSE(bids.empty());
    for (const auto& b : bids) {
      EXPECT_EQ(b.bid, 0);
      EXPECT_FALSE(b.use_advantage_on_tie);
    }
  }
}

TEST(Oracle, LosersBallAnomaly) {
  GameGraph smw = parse_game_spec("smw");
  for (int c = 0; c <= 5; ++c) {
    EXPECT_EQ(outcome(smw, c, c, Holder::kAlice, Rule::kLosersBall), kBW) << c;
    EXPECT_EQ(outcome(smw, c, c, Holder::kBob, Rule::kLosersBall), kAW) << c;
  }
}

TEST(Oracle, LadiesFirstBlocks) {
  for (int b = 0; b <= 3; ++b) {
    EXPECT_EQ(at_start("ladies:" + std::to_string(b + 2), 0, b, Holder::kNone,
                       Rule::kLadiesFirst),
              kAW);
  }
  EXPECT_THROW(at_start("E", 1, 1, Holder::kAlice, Rule::kLadiesFirst), Error);
  EXPECT_THROW(at_start("E", 1, 1, Holder::kNone, Rule::kStandard), Error);
}

TEST(Oracle, ResolveBids) {
  auto r = resolve_bids(Rule::kStandard, 8, 4, Holder::kAlice, 1, 1, true);
  EXPECT_EQ(r.winner, Side::kAlice);
  EXPECT_EQ(r.alice_after, 3);
  EXPECT_EQ(r.holder_after, Holder::kBob);
  r = resolve_bids(Rule::kStandard, 8, 4, Holder::kAlice, 2, 2, false);
  EXPECT_EQ(r.winner, Side::kBob);
  EXPECT_EQ(r.alice_after, 6);
  EXPECT_EQ(r.holder_after, Holder::kAlice);
  r = resolve_bids(Rule::kStandard, 30, 15, Holder::kBob, 12, 10, false);
  EXPECT_EQ(r.winner, Side::kAlice);
  EXPECT_EQ(r.alice_after, 3);
  EXPECT_EQ(r.holder_after, Holder::kBob);
  // Make-it Take-it: the -eps holder loses ties, and -eps goes to the bid loser.
  r = resolve_bids(Rule::kMakeItTakeIt, 4, 2, Holder::kAlice, 1, 1, false);
  EXPECT_EQ(r.winner, Side::kBob);
  EXPECT_EQ(r.alice_after, 3);
  EXPECT_EQ(r.holder_after, Holder::kAlice);
  r = resolve_bids(Rule::kMakeItTakeIt, 4, 2, Holder::kBob, 2, 1, false);
  EXPECT_EQ(r.alice_after, 0);
  EXPECT_EQ(r.holder_after, Holder::kBob);
  // Loser's Ball: the eps holder wins ties, and eps goes to the bid loser.
  r = resolve_bids(Rule::kLosersBall, 4, 2, Holder::kAlice, 1, 1, false);
  EXPECT_EQ(r.winner, Side::kAlice);
  EXPECT_EQ(r.holder_after, Holder::kBob);
  r = resolve_bids(Rule::kLadiesFirst, 4, 2, Holder::kNone, 2, 2, false);
  EXPECT_EQ(r.winner, Side::kAlice);
  EXPECT_EQ(r.alice_after, 0);
  EXPECT_EQ(r.holder_after, Holder::kNone);
  EXPECT_THROW(resolve_bids(Rule::kStandard, 4, 2, Holder::kAlice, 3, 0, false), Error);
}

TEST(Oracle, StateCap) {
  OracleOptions o;
  o.state_cap = 10;
  try {
    solve_chip_states(build_tug(3), 8, Rule::kStandard, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kStateCapExceeded);
  }
}

TEST(Oracle, CacheSharesTables) {
  Oracle o(std::make_shared<GameGraph>(build_ult(2)));
  auto a = o.table(6, Rule::kStandard);
  EXPECT_EQ(a, o.table(6, Rule::kStandard));
  EXPECT_NE(a, o.table(6, Rule::kMakeItTakeIt));
  EXPECT_EQ(o.outcome(3, 3, Holder::kAlice, Rule::kStandard), kAW);
}

TEST(Restricted, UniqueMovesChangeNothing) {
  GameGraph u = build_ult(2);
  RichmanProfile p = richman(u);
  MoveFilter both = MoveFilter::richman_stable(u, p, Side::kAlice);
  for (int k = 0; k <= 8; ++k) {
    auto t = solve_chip_states(u, k, Rule::kStandard);
    auto r = solve_restricted(u, k, Rule::kStandard, both);
    for (VertexId v = 0; v < static_cast<VertexId>(u.size()); ++v) {
      for (int a = 0; a <= k; ++a) {
        for (Holder h : {Holder::kAlice, Holder::kBob}) EXPECT_EQ(t.at(v, a, h), r.at(v, a, h));
      }
    }
  }
}

TEST(Restricted, TugWedgeInstability) {
  GameGraph w = parse_game_spec("wedge(tug:1,root(tug:10,-1))");
  RichmanProfile p = richman(w);
  // Alice's best branch is Tug^10 from -1 (9/20), Bob's is Tug^1 (1/2).
  EXPECT_EQ(p.at_start(w), Rational(19, 40));
  auto filter = MoveFilter::richman_stable(w, p, Side::kBob);
  EXPECT_TRUE(filter.active(Side::kBob));
  EXPECT_FALSE(filter.active(Side::kAlice));
  ASSERT_EQ(filter.moves(w, Side::kBob, w.start()).size(), 1u);
  EXPECT_EQ(at_start("wedge(tug:1,root(tug:10,-1))", 3, 2, Holder::kAlice), kDraw);
  auto r = solve_restricted(w, 5, Rule::kStandard, filter);
  EXPECT_EQ(r.at(w.start(), 3, Holder::kAlice), kAW);
}

TEST(Restricted, TicTacToeFirstMoveAtFive) {
  TTTGame game = build_ttt_game();
  const GameGraph& g = game.graph;
  VertexId center = *game.vertex_of(TTTBoard::from_string("....A...."));
  VertexId corner = *game.vertex_of(TTTBoard::from_string("A........"));
  MoveFilter only_center, only_corner;
  only_center.restrict(Side::kAlice, g.start(), {center});
  only_corner.restrict(Side::kAlice, g.start(), {corner});
  auto full = solve_chip_states(g, 5, Rule::kStandard);
  auto c = solve_restricted(g, 5, Rule::kStandard, only_center);
  auto e = solve_restricted(g, 5, Rule::kStandard, only_corner);
  // f(5) = 3: three plain chips win, but not when the first move must be central.
  EXPECT_EQ(full.at(g.start(), 3, Holder::kBob), kAW);
  EXPECT_EQ(e.at(g.start(), 3, Holder::kBob), kAW);
  EXPECT_NE(c.at(g.start(), 3, Holder::kBob), kAW);
  EXPECT_EQ(c.at(g.start(), 3, Holder::kAlice), kAW);
}

StateOutcome swap(StateOutcome o) {
  return o == kAW ? kBW : o == kBW ? kAW : kDraw;
}

Holder swap(Holder h) {
  return h == Holder::kAlice ? Holder::kBob : h == Holder::kBob ? Holder::kAlice : h;
}

TEST(OracleProperty, RoleSwapDuality) {
  std::mt19937_64 rng(41);
  int lf_failures = 0;
  for (int i = 0; i < 50; ++i) {
    GameGraph g = testing::random_bounded_game(rng);
    GameGraph r = reverse(g);
    for (int k = 0; k <= 5; ++k) {
      for (Rule rule : {Rule::kStandard, Rule::kMakeItTakeIt, Rule::kLosersBall}) {
        auto t = solve_chip_states(g, k, rule);
        auto tr = solve_chip_states(r, k, rule);
        for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
          for (int a = 0; a <= k; ++a) {
            for (Holder h : {Holder::kAlice, Holder::kBob}) {
              EXPECT_EQ(t.at(v, a, h), swap(tr.at(v, k - a, swap(h))));
            }
          }
        }
      }
      auto t = solve_chip_states(g, k, Rule::kLadiesFirst);
      auto tr = solve_chip_states(r, k, Rule::kLadiesFirst);
      for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
        for (int a = 0; a <= k; ++a) {
          if (t.at(v, a, Holder::kNone) != swap(tr.at(v, k - a, Holder::kNone))) ++lf_failures;
        }
      }
    }
  }
  EXPECT_GT(lf_failures, 0);
}

TEST(OracleProperty, TugRoleSwap) {
  GameGraph g = build_tug(2), r = reverse(g);
  for (int k = 0; k <= 8; ++k) {
    auto t = solve_chip_states(g, k, Rule::kStandard);
    auto tr = solve_chip_states(r, k, Rule::kStandard);
    for (int a = 0; a <= k; ++a) {
      for (Holder h : {Holder::kAlice, Holder::kBob}) {
        EXPECT_EQ(t.at(g.start(), a, h), swap(tr.at(g.start(), k - a, swap(h))));
      }
    }
  }
}

// For a fixed vertex and total, AliceWin is an up-set and BobWin a down-set in
// Alice's holding order. This covers both "* is an advantage" and "1 > *".
TEST(OracleProperty, MonotoneInHolding) {
  std::mt19937_64 rng(42);
  std::vector<GameGraph> games = {build_tug(2), build_ult(2), build_tug(3)};
  for (int i = 0; i < 40; ++i) games.push_back(testing::random_bounded_game(rng));
  for (const auto& g : games) {
    for (int k = 0; k <= 7; ++k) {
      for (Rule rule : {Rule::kStandard, Rule::kMakeItTakeIt}) {
        auto t = solve_chip_states(g, k, rule);
        Regime regime = regime_of(rule);
        for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
          bool alice_seen = false, bob_done = false;
          for (std::int64_t rank = regime == Regime::kStar ? 0 : -1; rank <= 2 * k + 1; ++rank) {
            ChipHolding h = holding_from_rank(rank, regime);
            if (h.amount > k) continue;
            Holder holder = h.marker == Marker::kPlain ? Holder::kBob : Holder::kAlice;
            auto o = t.at(v, h.amount, holder);
            if (alice_seen) EXPECT_EQ(o, kAW);
            if (o == kAW) alice_seen = true;
            if (o != kBW) bob_done = true;
            if (bob_done) EXPECT_NE(o, kBW);
          }
        }
      }
    }
  }
}

TEST(OracleProperty, TugPeriodicityShift) {
  GameGraph g = build_tug(2);
  for (int k = 0; k <= 8; ++k) {
    for (int a = 0; a <= k; ++a) {
      for (Holder h : {Holder::kAlice, Holder::kBob}) {
        if (outcome(g, a, k - a, h, Rule::kStandard) != kAW) continue;
        EXPECT_EQ(outcome(g, a + 2, k - a + 2, h, Rule::kStandard), kAW);
      }
    }
  }
}

TEST(OracleProperty, CertifiedActionsDecreaseRank) {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 30; ++i) {
    GameGraph g = testing::random_bounded_game(rng);
    for (int k = 0; k <= 4; ++k) {
      auto t = solve_chip_states(g, k, Rule::kStandard);
      for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
        if (g.is_terminal(v)) continue;
        for (int a = 0; a <= k; ++a) {
          for (Holder h : {Holder::kAlice, Holder::kBob}) {
            ChipState s{v, a, h};
            for (Side side : {Side::kAlice, Side::kBob}) {
              auto want = side == Side::kAlice ? kAW : kBW;
              if (t.at(s) != want) continue;
              EXPECT_FALSE(certified_bids(g, t, s, side).empty());
            }
          }
        }
      }
    }
  }
}

}  // namespace
}  // namespace bidding
