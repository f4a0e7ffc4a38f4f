#include <gtest/gtest.h>

#include <random>

#include "bidding/error.hpp"
#include "bidding/play.hpp"
#include "session_fuzz.hpp"

namespace bidding {
namespace {

std::shared_ptr<AiContext> context(const std::string& spec) {
  static testing::ContextPool pool;
  return pool.get(spec);
}

PlaySession session(const std::string& game, const std::string& split,
                    Rule rule = Rule::kStandard, AiControl ai = AiControl::kNone) {
  SessionConfig c;
  c.game = game;
  c.rule = rule;
  c.ai = ai;
  apply_split(c, split);
  if (rule == Rule::kLadiesFirst) c.holder = Holder::kNone;
  return PlaySession(c, context(game));
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::kInvalidArgument;
}

void bids(PlaySession& s, int a, int b) {
  s.submit_bid(Side::kAlice, a);
  s.submit_bid(Side::kBob, b);
}

// The four-chip game from the introduction, cells numbered row by row.
void play_intro_game(PlaySession& s) {
  bids(s, 1, 1);
  s.resolve_tie(Side::kAlice, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kAlice, Election::kSelf, 4);
  ASSERT_EQ(split_text({"ttt", s.alice_chips(), s.bob_chips(), s.holder()}), "3/5*");

  bids(s, 1, 1);
  s.resolve_tie(Side::kBob, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kBob, Election::kSelf, 0);

  bids(s, 2, 2);
  s.resolve_tie(Side::kAlice, TieChoice::kOpponentWinsKeepToken);
  s.move_cell(Side::kBob, Election::kSelf, 2);
  EXPECT_EQ(s.alice_chips(), 6);
  EXPECT_EQ(s.holder(), Holder::kAlice);

  bids(s, 2, 2);
  s.resolve_tie(Side::kAlice, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kAlice, Election::kSelf, 1);

  bids(s, 4, 4);
  s.resolve_tie(Side::kBob, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kBob, Election::kSelf, 7);
  EXPECT_EQ(s.alice_chips(), 8);
  EXPECT_EQ(s.holder(), Holder::kAlice);  // 8*/0

  bids(s, 0, 0);
  s.resolve_tie(Side::kAlice, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kAlice, Election::kSelf, 3);
  bids(s, 1, 0);
  s.move_cell(Side::kAlice, Election::kSelf, 5);
}

TEST(Play, IntroductionTranscript) {
  PlaySession s = session("ttt", "4*/4");
  play_intro_game(s);
  EXPECT_EQ(s.phase(), Phase::kFinished);
  EXPECT_EQ(s.outcome(), SessionOutcome::kAliceWin);
  // The last single chip leaves 7/1*.
  EXPECT_EQ(s.alice_chips(), 7);
  EXPECT_EQ(s.holder(), Holder::kBob);
  EXPECT_EQ(s.board()->to_string(), "BAB" "AAA" ".B.");
}

TEST(Play, StrictBidPaysWinner) {
  PlaySession s = session("ttt", "15/15*");
  bids(s, 12, 10);
  EXPECT_EQ(s.phase(), Phase::kAwaitingElection);
  EXPECT_EQ(s.actor(), Side::kAlice);
  EXPECT_EQ(s.alice_chips(), 3);
  EXPECT_EQ(s.bob_chips(), 27);
  EXPECT_EQ(s.holder(), Holder::kBob);
}

TEST(Play, ZeroChips) {
  PlaySession s = session("ttt", "0*/0");
  bids(s, 0, 0);
  EXPECT_EQ(s.phase(), Phase::kAwaitingTieChoice);
  s.resolve_tie(Side::kAlice, TieChoice::kOpponentWinsKeepToken);
  EXPECT_EQ(s.actor(), Side::kBob);
  EXPECT_EQ(s.holder(), Holder::kAlice);
}

TEST(Play, CommitHidesFirstBid) {
  PlaySession s = session("E", "2*/2");
  s.submit_bid(Side::kBob, 1);
  EXPECT_TRUE(s.committed(Side::kBob));
  EXPECT_FALSE(s.committed(Side::kAlice));
  EXPECT_EQ(code_of([&] { s.submit_bid(Side::kBob, 0); }), ErrorCode::kWrongPlayer);
  s.submit_bid(Side::kAlice, 2);
  EXPECT_EQ(s.actor(), Side::kAlice);
}

TEST(Play, LadiesFirstTie) {
  PlaySession s = session("E", "2/2", Rule::kLadiesFirst);
  EXPECT_EQ(s.holder(), Holder::kNone);
  bids(s, 2, 2);
  EXPECT_EQ(s.phase(), Phase::kAwaitingElection);
  EXPECT_EQ(s.actor(), Side::kAlice);
  EXPECT_EQ(s.alice_chips(), 0);
  EXPECT_EQ(s.holder(), Holder::kNone);
}

TEST(Play, MakeItTakeItTie) {
  PlaySession s = session("E", "2-/2", Rule::kMakeItTakeIt);
  bids(s, 1, 1);
  EXPECT_EQ(s.actor(), Side::kBob);
  EXPECT_EQ(s.alice_chips(), 3);
  EXPECT_EQ(s.holder(), Holder::kAlice);
}

TEST(Play, TieChoicesAtEveryLevel) {
  for (int bid : {0, 1, 2}) {
    for (TieChoice c : {TieChoice::kSelfWinPassToken, TieChoice::kOpponentWinsKeepToken}) {
      PlaySession s = session("ttt", "3*/3");
      bids(s, bid, bid);
      EXPECT_EQ(code_of([&] { s.resolve_tie(Side::kBob, c); }), ErrorCode::kWrongPlayer);
      s.resolve_tie(Side::kAlice, c);
      bool self = c == TieChoice::kSelfWinPassToken;
      EXPECT_EQ(s.actor(), self ? Side::kAlice : Side::kBob);
      EXPECT_EQ(s.alice_chips(), self ? 3 - bid : 3 + bid);
      EXPECT_EQ(s.holder(), self ? Holder::kBob : Holder::kAlice);
    }
  }
}

TEST(Play, Rejections) {
  PlaySession s = session("ttt", "3*/3");
  std::string before = s.to_json(true);
  EXPECT_EQ(code_of([&] { s.submit_bid(Side::kAlice, 4); }), ErrorCode::kIllegalAction);
  EXPECT_EQ(code_of([&] { s.submit_bid(Side::kAlice, -1); }), ErrorCode::kIllegalAction);
  EXPECT_EQ(code_of([&] { s.move_cell(Side::kAlice, Election::kSelf, 4); }),
            ErrorCode::kWrongPhase);
  EXPECT_EQ(code_of([&] { s.resolve_tie(Side::kAlice, TieChoice::kSelfWinPassToken); }),
            ErrorCode::kWrongPhase);
  EXPECT_EQ(s.to_json(true), before);
  bids(s, 2, 1);
  EXPECT_EQ(code_of([&] { s.move_cell(Side::kBob, Election::kSelf, 4); }),
            ErrorCode::kWrongPlayer);
  s.move_cell(Side::kAlice, Election::kSelf, 4);
  bids(s, 0, 1);
  EXPECT_EQ(code_of([&] { s.move_cell(Side::kBob, Election::kSelf, 4); }),
            ErrorCode::kIllegalAction);
  EXPECT_EQ(code_of([&] { s.move_cell(Side::kBob, Election::kSelf, 9); }),
            ErrorCode::kIllegalAction);
  EXPECT_EQ(code_of([&] { session("ttt", "3*/3", Rule::kStandard).elect_and_move(
                              Side::kAlice, Election::kSelf, 0); }),
            ErrorCode::kWrongPhase);
}

TEST(Play, LegalActionsFollowPhase) {
  PlaySession s = session("ult:2", "2*/2");
  EXPECT_TRUE(s.legal_moves().empty());
  EXPECT_TRUE(s.legal_elections().empty());
  bids(s, 1, 0);
  auto el = s.legal_elections();
  EXPECT_FALSE(el.empty());
  EXPECT_TRUE(s.legal_moves().empty());
  if (std::find(el.begin(), el.end(), Election::kForceOpponent) != el.end()) {
    s.elect_and_move(Side::kAlice, Election::kForceOpponent, std::nullopt);
    EXPECT_EQ(s.phase(), Phase::kAwaitingMove);
    EXPECT_EQ(s.actor(), Side::kBob);
    EXPECT_FALSE(s.legal_moves().empty());
  }
}

// A winning AI side wins against every opponent line we try.
TEST(Play, AiWinsFromWinningStart) {
  std::mt19937_64 rng(61);
  struct Case {
    std::string game, split;
    AiControl ai;
    SessionOutcome want;
  };
  std::vector<Case> cases = {
      {"E", "2/1*", AiControl::kAlice, SessionOutcome::kAliceWin},
      {"tug:2", "3*/1", AiControl::kAlice, SessionOutcome::kAliceWin},
      {"tug:2", "1/3*", AiControl::kBob, SessionOutcome::kBobWin},
      {"ttt", "6*/2", AiControl::kAlice, SessionOutcome::kAliceWin},
  };
  for (const auto& c : cases) {
    for (int round = 0; round < 20; ++round) {
      PlaySession s = session(c.game, c.split, Rule::kStandard, c.ai);
      for (int i = 0; i < 400 && s.phase() != Phase::kFinished; ++i) {
        if (!testing::random_human_step(rng, s)) break;
        s.run_ai();
      }
      EXPECT_EQ(s.outcome(), c.want) << c.game << " " << c.split;
    }
  }
}

TEST(Play, AiAnswersIntroLine) {
  // Bob's AI takes over after the third move of the introduction.
  PlaySession s = session("ttt", "4*/4", Rule::kStandard, AiControl::kNone);
  bids(s, 1, 1);
  s.resolve_tie(Side::kAlice, TieChoice::kSelfWinPassToken);
  s.move_cell(Side::kAlice, Election::kSelf, 4);
  SessionConfig c = s.config();
  c.ai = AiControl::kBob;
  PlaySession t = PlaySession::replay(c, s.history(), context("ttt"));
  t.submit_bid(Side::kAlice, 1);
  t.run_ai();
  EXPECT_NE(t.phase(), Phase::kAwaitingBids);
}

TEST(Play, ReplayAndJsonRoundTrip) {
  PlaySession s = session("ttt", "4*/4");
  play_intro_game(s);
  PlaySession r = PlaySession::replay(s.config(), s.history(), context("ttt"));
  EXPECT_EQ(r.to_json(true), s.to_json(true));
  PlaySession j = PlaySession::from_json(s.to_json(true), context("ttt"));
  EXPECT_EQ(j.to_json(true), s.to_json(true));
  auto ev = events_from_json(events_to_json(s.history()));
  EXPECT_EQ(ev.size(), s.history().size());
  SessionConfig c = config_from_json(config_to_json(s.config()));
  EXPECT_EQ(config_to_json(c), config_to_json(s.config()));
  EXPECT_THROW(PlaySession::from_json("{}", context("ttt")), Error);
}

TEST(Play, SplitText) {
  SessionConfig c;
  apply_split(c, "4*/4");
  EXPECT_EQ(c.holder, Holder::kAlice);
  apply_split(c, "3/5*");
  EXPECT_EQ(c.alice, 3);
  EXPECT_EQ(c.bob, 5);
  EXPECT_EQ(c.holder, Holder::kBob);
  EXPECT_EQ(split_text(c), "3/5*");
  c.rule = Rule::kMakeItTakeIt;
  EXPECT_EQ(split_text(c), "3/5-");
  apply_split(c, "4/4");
  EXPECT_EQ(c.holder, Holder::kAlice);
  EXPECT_THROW(apply_split(c, "4*/4*"), Error);
  EXPECT_THROW(apply_split(c, "44"), Error);
  EXPECT_THROW(apply_split(c, "x/4"), Error);
}

TEST(PlayProperty, FuzzedSessionsKeepInvariants) {
  std::mt19937_64 rng(62);
  testing::ContextPool pool;
  testing::FuzzStats stats;
  for (int i = 0; i < 2000; ++i) testing::fuzz_one_session(rng, pool, stats);
  EXPECT_EQ(stats.sessions, 2000);
  EXPECT_GT(stats.rejected, 0);
  for (const auto& f : stats.failures) ADD_FAILURE() << f;
}

TEST(PlayProperty, AiPlayoutsAreSound) {
  std::mt19937_64 rng(63);
  testing::ContextPool pool;
  testing::SoundnessStats stats;
  for (int i = 0; i < 200; ++i) testing::soundness_playout(rng, pool, stats);
  EXPECT_EQ(stats.playouts, 200);
  EXPECT_EQ(stats.fallbacks, 0);
  for (const auto& f : stats.failures) ADD_FAILURE() << f;
}

}  // namespace
}  // namespace bidding
