#include <gtest/gtest.h>

#include <random>
#include <string>

#include "bidding/builders.hpp"
#include "bidding/error.hpp"
#include "bidding/game_graph.hpp"
#include "bidding/game_spec.hpp"
#include "bidding/ttt.hpp"
#include "test_support.hpp"

namespace bidding {
namespace {

// Longest play from the start, by DFS over a DAG.
int longest_path(const GameGraph& g, VertexId v, std::vector<int>& memo) {
  if (memo[v] >= 0) return memo[v];
  int best = 0;
  for (Side s : {Side::kAlice, Side::kBob}) {
    for (VertexId w : g.moves(s, v)) best = std::max(best, 1 + longest_path(g, w, memo));
  }
  return memo[v] = best;
}

void expect_graph_invariants(const GameGraph& g) {
  for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
    bool has_moves = !g.red_moves(v).empty() || !g.blue_moves(v).empty();
    EXPECT_NE(g.is_terminal(v), has_moves) << "vertex " << g.label(v);
    for (Side s : {Side::kAlice, Side::kBob}) {
      for (VertexId w : g.moves(s, v)) EXPECT_TRUE(g.valid_vertex(w));
    }
  }
  if (auto d = g.bounded_depth()) {
    std::vector<int> memo(g.size(), -1);
    EXPECT_LE(longest_path(g, g.start(), memo), *d);
  }
}

TEST(Builders, Tug) {
  GameGraph g = build_tug(1);
  EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(g.red_moves(g.start()).size(), 2u);
  EXPECT_EQ(g.blue_moves(g.start()).size(), 2u);
  EXPECT_TRUE(g.bounded());  // both moves from 0 end the game
  GameGraph t2 = build_tug(2);
  EXPECT_FALSE(t2.bounded());
  EXPECT_EQ(t2.terminal(*t2.find_label("-2")), Outcome::kAliceWin);
  EXPECT_EQ(t2.terminal(*t2.find_label("2")), Outcome::kBobWin);
  EXPECT_THROW(build_tug(0), Error);
  expect_graph_invariants(t2);
}

TEST(Builders, Ultimatum) {
  GameGraph g = build_ult(1);
  EXPECT_EQ(g.size(), 5u);
  EXPECT_THROW(build_ult(0), Error);
  GameGraph u = build_ult(3);
  VertexId start = u.start();
  ASSERT_EQ(u.red_moves(start).size(), 1u);
  EXPECT_EQ(u.label(u.red_moves(start)[0]), "3");
  EXPECT_EQ(u.label(u.blue_moves(start)[0]), "-3");
  VertexId two = *u.find_label("2");
  EXPECT_EQ(u.label(u.red_moves(two)[0]), "A");
  EXPECT_EQ(u.label(u.blue_moves(two)[0]), "1");
  expect_graph_invariants(u);
}

TEST(Builders, PrimitivesAreBounded) {
  for (auto spec : {"A", "B", "E", "apow:3", "bpow:2", "bidzero:3", "smw", "ladies:4",
                    "alicepath:3", "wedge(A,bpow:2)"}) {
    GameGraph g = parse_game_spec(spec);
    EXPECT_TRUE(g.bounded()) << spec;
    expect_graph_invariants(g);
  }
  EXPECT_THROW(build_primitive({PrimitiveKind::kAPow, 0}), Error);
  EXPECT_THROW(parse_game_spec("nosuchgame"), Error);
}

TEST(Builders, WedgeSize) {
  GameGraph g = build_tug(2), h = build_ult(2);
  EXPECT_EQ(wedge(g, h).size(), g.size() + h.size() + 1);
  GameGraph w = wedge(g, h);
  EXPECT_EQ(w.red_moves(w.start()).size(), 2u);
  EXPECT_EQ(w.blue_moves(w.start()).size(), 2u);
}

TEST(Builders, TruncateZeroIsTie) {
  GameGraph t = truncate(build_tug(2), 0);
  EXPECT_EQ(t.terminal(t.start()), Outcome::kTie);
  EXPECT_EQ(t.bounded_depth(), 0);
}

TEST(Builders, TruncationDepth) {
  for (int n : {1, 3, 6, 10}) {
    GameGraph t = truncate(build_ult(2), n);
    ASSERT_TRUE(t.bounded());
    EXPECT_LE(*t.bounded_depth(), n);
    expect_graph_invariants(t);
  }
}

TEST(BuildersProperty, ReverseIsInvolution) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 100; ++i) {
    GameGraph g = testing::random_bounded_game(rng);
    EXPECT_EQ(reverse(reverse(g)), g);
    GameGraph r = reverse(g);
    for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
      ASSERT_EQ(r.red_moves(v).size(), g.blue_moves(v).size());
      if (auto o = g.terminal(v)) {
        Outcome want = *o == Outcome::kAliceWin ? Outcome::kBobWin
                       : *o == Outcome::kBobWin ? Outcome::kAliceWin
                                                : Outcome::kTie;
        EXPECT_EQ(r.terminal(v), want);
      }
    }
  }
  EXPECT_EQ(reverse(reverse(build_tug(3))), build_tug(3));
}

TEST(BuildersProperty, RandomGraphsSatisfyInvariants) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) expect_graph_invariants(testing::random_bounded_game(rng));
}

TEST(GraphBuilder, RejectsBadStructure) {
  GraphBuilder b;
  VertexId v = b.add_vertex("lonely");
  b.set_start(v);
  EXPECT_THROW(std::move(b).build(), Error);

  GraphBuilder c;
  VertexId s = c.add_vertex("s");
  VertexId t = c.add_terminal(Outcome::kAliceWin, "t");
  c.add_move(Side::kAlice, s, t);
  c.add_move(Side::kAlice, s, t);  // collapses
  c.add_move(Side::kBob, t, s);    // terminal with a move
  EXPECT_THROW(std::move(c).build(), Error);

  GraphBuilder d;
  VertexId s2 = d.add_vertex("s");
  VertexId t2 = d.add_terminal(Outcome::kAliceWin, "t");
  d.add_move(Side::kAlice, s2, t2);
  d.add_move(Side::kAlice, s2, t2);
  GameGraph g = std::move(d).build();
  EXPECT_EQ(g.red_moves(s2).size(), 1u);
}

TEST(GraphJson, RoundTrip) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 30; ++i) {
    GameGraph g = testing::random_bounded_game(rng);
    EXPECT_EQ(graph_from_json(graph_to_json(g)), g);
  }
  GameGraph tug = build_tug(3);
  std::string doc = graph_to_json(tug);
  EXPECT_NE(doc.find("bidgraph-1"), std::string::npos);
  EXPECT_EQ(graph_from_json(doc), tug);
  EXPECT_FALSE(graph_from_json(doc).bounded());
  EXPECT_THROW(graph_from_json("{\"format\":\"other\"}"), Error);
  EXPECT_THROW(graph_from_json("not json"), Error);
}

TEST(GameSpec, Forms) {
  EXPECT_EQ(parse_game_spec("rev(rev(tug:2))"), build_tug(2));
  EXPECT_EQ(parse_game_spec("trunc(tug:2,0)").terminal(0), Outcome::kTie);
  GameGraph r = parse_game_spec("root(tug:3,-1)");
  EXPECT_EQ(r.label(r.start()), "-1");
  EXPECT_EQ(parse_game_spec("wedge(ult:1,ult:3,ult:5)").red_moves(0).size(), 3u);
  EXPECT_TRUE(resolve_game("ttt").ttt != nullptr);
  EXPECT_TRUE(resolve_game("tug:2").ttt == nullptr);
  EXPECT_THROW(parse_game_spec("wedge(A)"), Error);
  EXPECT_THROW(parse_game_spec("tug:x"), Error);
}

TEST(TTT, BoardBasics) {
  TTTBoard b = TTTBoard::from_string("AAA.BB...");
  EXPECT_TRUE(b.has_line(Cell::kA));
  EXPECT_FALSE(b.has_line(Cell::kB));
  EXPECT_EQ(b.to_string(), "AAA.BB...");
  EXPECT_EQ(b.empty_count(), 4);
  EXPECT_THROW(TTTBoard::from_string("AAA"), Error);
  EXPECT_THROW(TTTBoard::from_string("AAABBB..."), Error);
}

TEST(TTTProperty, CanonicalFormIsSymmetryInvariant) {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> cell(0, 2);
  for (int i = 0; i < 2000; ++i) {
    TTTBoard b;
    for (int c = 0; c < 9; ++c) b = b.with(c, static_cast<Cell>(cell(rng)));
    TTTBoard canon = b.canonical();
    EXPECT_EQ(b.transformed(b.canonicalizing_symmetry()), canon);
    for (int g = 0; g < 8; ++g) {
      EXPECT_EQ(b.transformed(g).canonical(), canon);
      EXPECT_LE(canon.to_string(), b.transformed(g).to_string());
      for (int c = 0; c < 9; ++c) {
        EXPECT_EQ(map_cell(inverse_symmetry(g), map_cell(g, c)), c);
      }
    }
  }
}

TEST(TTT, Graph) {
  TTTGame game = build_ttt_game();
  const GameGraph& g = game.graph;
  EXPECT_LE(g.size(), 19683u);
  EXPECT_EQ(g.bounded_depth(), 9);
  EXPECT_EQ(g.red_moves(g.start()).size(), 3u);  // corner, edge, center up to symmetry
  expect_graph_invariants(g);
  for (VertexId v = 0; v < static_cast<VertexId>(g.size()); ++v) {
    const TTTBoard& b = game.boards[v];
    EXPECT_EQ(b, b.canonical());
    EXPECT_FALSE(b.has_line(Cell::kA) && b.has_line(Cell::kB));
    if (b.has_line(Cell::kA)) EXPECT_EQ(g.terminal(v), Outcome::kAliceWin);
    else if (b.has_line(Cell::kB) || b.full()) EXPECT_EQ(g.terminal(v), Outcome::kBobWin);
    else EXPECT_FALSE(g.is_terminal(v));
  }
  EXPECT_EQ(game.vertex_of(TTTBoard::from_string("..A......")),
            game.vertex_of(TTTBoard::from_string("A........")));

  GameGraph center = build_ttt(std::vector<int>{kCenterCell});
  EXPECT_EQ(center.red_moves(center.start()).size(), 1u);
  EXPECT_EQ(center.blue_moves(center.start()).size(), 3u);
  EXPECT_THROW(build_ttt(std::vector<int>{}), Error);
}

}  // namespace
}  // namespace bidding
