#include "bidding/builders.hpp"

#include <map>
#include <string>

#include "bidding/error.hpp"

namespace bidding {
namespace {

// Copies g into b; returns the id offset of g's vertex 0.
VertexId append(GraphBuilder& b, const GameGraph& g, const std::string& prefix) {
  auto offset = static_cast<VertexId>(b.size());
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto id = static_cast<VertexId>(v);
    std::string label = prefix + g.label(id);
    if (auto o = g.terminal(id)) {
      b.add_terminal(*o, std::move(label));
    } else {
      b.add_vertex(std::move(label));
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto id = static_cast<VertexId>(v);
    for (VertexId w : g.red_moves(id)) b.add_move(Side::kAlice, offset + id, offset + w);
    for (VertexId w : g.blue_moves(id)) b.add_move(Side::kBob, offset + id, offset + w);
  }
  return offset;
}

void require_positive(int n, const char* what) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, std::string(what) + " needs n >= 1");
}

// Sudden death: `winner` takes the game by making any of the first n moves.
GameGraph sudden_death(int n, Side winner) {
  GraphBuilder b;
  Side loser = other(winner);
  Outcome win = winner == Side::kAlice ? Outcome::kAliceWin : Outcome::kBobWin;
  Outcome lose = winner == Side::kAlice ? Outcome::kBobWin : Outcome::kAliceWin;
  VertexId w = b.add_terminal(win, winner == Side::kAlice ? "A" : "B");
  VertexId l = b.add_terminal(lose, winner == Side::kAlice ? "B" : "A");
  std::vector<VertexId> chain;
  for (int i = 0; i < n; ++i) chain.push_back(b.add_vertex("s" + std::to_string(i)));
  for (int i = 0; i < n; ++i) {
    b.add_move(winner, chain[i], w);
    b.add_move(loser, chain[i], i + 1 < n ? chain[i + 1] : l);
  }
  b.set_start(chain[0]);
  return std::move(b).build();
}

GameGraph ladies_blocks(int n) {
  GraphBuilder b;
  VertexId win = b.add_terminal(Outcome::kAliceWin, "A");
  VertexId tie = b.add_terminal(Outcome::kTie, "T");
  // (block, index, alive) -> vertex; block j has j moves.
  std::map<std::tuple<int, int, bool>, VertexId> ids;
  for (int j = 1; j <= n; ++j) {
    for (int i = 0; i < j; ++i) {
      for (bool alive : {true, false}) {
        if (i == 0 && !alive) continue;
        std::string label = "b" + std::to_string(j) + "." + std::to_string(i) +
                            (alive ? "" : "x");
        ids[{j, i, alive}] = b.add_vertex(label);
      }
    }
  }
  auto next_block = [&](int j) { return j < n ? ids.at({j + 1, 0, true}) : tie; };
  for (auto [key, v] : ids) {
    auto [j, i, alive] = key;
    bool last = i + 1 == j;
    VertexId after = last ? next_block(j) : ids.at({j, i + 1, false});
    if (alive) {
      b.add_move(Side::kAlice, v, last ? win : ids.at({j, i + 1, true}));
      b.add_move(Side::kBob, v, after);
    } else {
      b.add_both(v, after);
    }
  }
  b.set_start(ids.at({1, 0, true}));
  return std::move(b).build();
}

}  // namespace

GameGraph build_tug(int n) {
  require_positive(n, "tug");
  GraphBuilder b;
  for (int j = -n; j <= n; ++j) {
    std::string label = std::to_string(j);
    if (j == -n) {
      b.add_terminal(Outcome::kAliceWin, label);
    } else if (j == n) {
      b.add_terminal(Outcome::kBobWin, label);
    } else {
      b.add_vertex(label);
    }
  }
  auto id = [n](int j) { return static_cast<VertexId>(j + n); };
  for (int j = -n + 1; j <= n - 1; ++j) {
    b.add_both(id(j), id(j - 1));
    b.add_both(id(j), id(j + 1));
  }
  b.set_start(id(0));
  return std::move(b).build();
}

GameGraph build_ult(int n) {
  require_positive(n, "ult");
  GraphBuilder b;
  VertexId bob = b.add_terminal(Outcome::kBobWin, "B");
  for (int j = -n; j <= n; ++j) b.add_vertex(std::to_string(j));
  VertexId alice = b.add_terminal(Outcome::kAliceWin, "A");
  auto id = [n](int j) { return static_cast<VertexId>(j + n + 1); };
  b.add_move(Side::kAlice, id(0), id(n));
  b.add_move(Side::kBob, id(0), id(-n));
  for (int j = 1; j <= n; ++j) {
    b.add_move(Side::kAlice, id(j), alice);
    b.add_move(Side::kBob, id(j), id(j - 1));
    b.add_move(Side::kAlice, id(-j), id(-j + 1));
    b.add_move(Side::kBob, id(-j), bob);
  }
  b.set_start(id(0));
  return std::move(b).build();
}

GameGraph build_primitive(Primitive p) {
  switch (p.kind) {
    case PrimitiveKind::kA:
    case PrimitiveKind::kB: {
      GraphBuilder b;
      bool a = p.kind == PrimitiveKind::kA;
      b.set_start(b.add_terminal(a ? Outcome::kAliceWin : Outcome::kBobWin, a ? "A" : "B"));
      return std::move(b).build();
    }
    case PrimitiveKind::kE:
      return sudden_death(1, Side::kAlice);
    case PrimitiveKind::kAPow:
      require_positive(p.n, "apow");
      return sudden_death(p.n, Side::kAlice);
    case PrimitiveKind::kBPow:
    case PrimitiveKind::kBidZero:
      require_positive(p.n, "bpow");
      return sudden_death(p.n, Side::kBob);
    case PrimitiveKind::kSecondMoveWins: {
      GraphBuilder b;
      VertexId a = b.add_terminal(Outcome::kAliceWin, "A");
      VertexId bw = b.add_terminal(Outcome::kBobWin, "B");
      VertexId s0 = b.add_vertex("s0");
      VertexId s1 = b.add_vertex("s1");
      b.add_both(s0, s1);
      b.add_move(Side::kAlice, s1, a);
      b.add_move(Side::kBob, s1, bw);
      b.set_start(s0);
      return std::move(b).build();
    }
    case PrimitiveKind::kLadiesBlocks:
      require_positive(p.n, "ladies");
      return ladies_blocks(p.n);
    case PrimitiveKind::kAlicePath: {
      if (p.n < 0) fail(ErrorCode::kInvalidArgument, "alicepath needs n >= 0");
      GraphBuilder b;
      VertexId next = b.add_terminal(Outcome::kAliceWin, "A");
      for (int i = p.n - 1; i >= 0; --i) {
        VertexId v = b.add_vertex("s" + std::to_string(i));
        b.add_both(v, next);
        next = v;
      }
      b.set_start(next);
      return std::move(b).build();
    }
  }
  fail(ErrorCode::kInvalidArgument, "unknown primitive kind");
}

GameGraph wedge(const GameGraph& g, const GameGraph& h) {
  const GameGraph parts[] = {g, h};
  return wedge_all(parts);
}

GameGraph wedge_all(std::span<const GameGraph> games) {
  if (games.empty()) fail(ErrorCode::kInvalidArgument, "wedge of no games");
  GraphBuilder b;
  VertexId root = b.add_vertex("^");
  for (std::size_t i = 0; i < games.size(); ++i) {
    VertexId off = append(b, games[i], std::to_string(i) + ".");
    b.add_both(root, off + games[i].start());
  }
  b.set_start(root);
  return std::move(b).build();
}

GameGraph reverse(const GameGraph& g) {
  GraphBuilder b;
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto id = static_cast<VertexId>(v);
    if (auto o = g.terminal(id)) {
      Outcome r = *o == Outcome::kAliceWin ? Outcome::kBobWin
                  : *o == Outcome::kBobWin ? Outcome::kAliceWin
                                           : Outcome::kTie;
      b.add_terminal(r, g.label(id));
    } else {
      b.add_vertex(g.label(id));
    }
  }
  for (std::size_t v = 0; v < g.size(); ++v) {
    auto id = static_cast<VertexId>(v);
    for (VertexId w : g.red_moves(id)) b.add_move(Side::kBob, id, w);
    for (VertexId w : g.blue_moves(id)) b.add_move(Side::kAlice, id, w);
  }
  b.set_start(g.start());
  return std::move(b).build();
}

GameGraph truncate(const GameGraph& g, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "truncation length must be >= 0");
  GraphBuilder b;
  std::map<std::pair<VertexId, int>, VertexId> ids;
  std::map<VertexId, VertexId> terminals;
  std::vector<std::pair<VertexId, int>> queue;
  auto get = [&](VertexId v, int t) -> VertexId {
    if (auto o = g.terminal(v)) {
      auto [it, fresh] = terminals.try_emplace(v, 0);
      if (fresh) it->second = b.add_terminal(*o, g.label(v));
      return it->second;
    }
    auto [it, fresh] = ids.try_emplace({v, t}, 0);
    if (fresh) {
      std::string label = g.label(v) + "@" + std::to_string(t);
      if (t == n) {
        it->second = b.add_terminal(Outcome::kTie, std::move(label));
      } else {
        it->second = b.add_vertex(std::move(label));
        queue.push_back({v, t});
      }
    }
    return it->second;
  };
  b.set_start(get(g.start(), 0));
  for (std::size_t q = 0; q < queue.size(); ++q) {
    auto [v, t] = queue[q];
    VertexId from = ids.at({v, t});
    for (Side s : {Side::kAlice, Side::kBob}) {
      for (VertexId w : g.moves(s, v)) b.add_move(s, from, get(w, t + 1));
    }
  }
  return std::move(b).build();
}

GameGraph with_start(const GameGraph& g, VertexId start) {
  if (!g.valid_vertex(start)) fail(ErrorCode::kInvalidArgument, "start vertex out of range");
  GraphBuilder b;
  append(b, g, "");
  b.set_start(start);
  return std::move(b).build();
}

}  // namespace bidding
