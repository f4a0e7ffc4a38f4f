#include "bidding/ttt.hpp"

#include <algorithm>

#include "bidding/error.hpp"

namespace bidding {
namespace {

constexpr int kLines[8][3] = {{0, 1, 2}, {3, 4, 5}, {6, 7, 8}, {0, 3, 6},
                              {1, 4, 7}, {2, 5, 8}, {0, 4, 8}, {2, 4, 6}};

// (r, c) -> image under symmetry s: four rotations, then the same composed
// with a transpose.
int map_rc(int s, int r, int c) {
  if (s >= 4) std::swap(r, c);
  for (int i = 0; i < s % 4; ++i) {
    int nr = c;
    int nc = 2 - r;
    r = nr;
    c = nc;
  }
  return 3 * r + c;
}

char cell_char(Cell c) { return c == Cell::kEmpty ? '.' : c == Cell::kA ? 'A' : 'B'; }

}  // namespace

int map_cell(int symmetry, int cell) { return map_rc(symmetry, cell / 3, cell % 3); }

int inverse_symmetry(int symmetry) {
  for (int t = 0; t < 8; ++t) {
    bool identity = true;
    for (int c = 0; c < 9 && identity; ++c) {
      identity = map_cell(t, map_cell(symmetry, c)) == c;
    }
    if (identity) return t;
  }
  return 0;
}

TTTBoard TTTBoard::from_string(std::string_view text) {
  if (text.size() != 9) fail(ErrorCode::kParse, "board needs 9 cells");
  TTTBoard b;
  for (int i = 0; i < 9; ++i) {
    switch (text[i]) {
      case '.': b.cells_[i] = Cell::kEmpty; break;
      case 'A': b.cells_[i] = Cell::kA; break;
      case 'B': b.cells_[i] = Cell::kB; break;
      default: fail(ErrorCode::kParse, "bad board cell '" + std::string(1, text[i]) + "'");
    }
  }
  if (b.has_line(Cell::kA) && b.has_line(Cell::kB)) {
    fail(ErrorCode::kInvalidArgument, "board has lines for both players");
  }
  return b;
}

std::string TTTBoard::to_string() const {
  std::string s(9, '.');
  for (int i = 0; i < 9; ++i) s[i] = cell_char(cells_[i]);
  return s;
}

TTTBoard TTTBoard::with(int cell, Cell value) const {
  TTTBoard b = *this;
  b.cells_[cell] = value;
  return b;
}

bool TTTBoard::has_line(Cell who) const {
  for (const auto& line : kLines) {
    if (cells_[line[0]] == who && cells_[line[1]] == who && cells_[line[2]] == who) {
      return true;
    }
  }
  return false;
}

bool TTTBoard::full() const { return empty_count() == 0; }

int TTTBoard::empty_count() const {
  return static_cast<int>(std::count(cells_.begin(), cells_.end(), Cell::kEmpty));
}

TTTBoard TTTBoard::transformed(int symmetry) const {
  TTTBoard b;
  for (int c = 0; c < 9; ++c) b.cells_[map_cell(symmetry, c)] = cells_[c];
  return b;
}

TTTBoard TTTBoard::canonical() const { return transformed(canonicalizing_symmetry()); }

int TTTBoard::canonicalizing_symmetry() const {
  // Cell enum order matches the character order '.' < 'A' < 'B'.
  int best = 0;
  TTTBoard best_board = *this;
  for (int s = 1; s < 8; ++s) {
    TTTBoard t = transformed(s);
    if (t.cells_ < best_board.cells_) {
      best_board = t;
      best = s;
    }
  }
  return best;
}

std::uint32_t TTTBoard::code() const {
  std::uint32_t code = 0;
  for (Cell c : cells_) code = code * 3 + static_cast<std::uint32_t>(c);
  return code;
}

std::optional<VertexId> TTTGame::vertex_of(const TTTBoard& board) const {
  auto it = index.find(board.canonical().code());
  if (it == index.end()) return std::nullopt;
  return it->second;
}

TTTGame build_ttt_game(std::optional<std::vector<int>> first_move_restriction) {
  if (first_move_restriction) {
    if (first_move_restriction->empty()) {
      fail(ErrorCode::kInvalidArgument, "first-move restriction must be nonempty");
    }
    for (int c : *first_move_restriction) {
      if (c < 0 || c > 8) fail(ErrorCode::kInvalidArgument, "cell out of range");
    }
  }
  TTTGame game;
  GraphBuilder b;
  auto get = [&](const TTTBoard& board) -> VertexId {
    TTTBoard canon = board.canonical();
    auto [it, fresh] = game.index.try_emplace(canon.code(), 0);
    if (fresh) {
      if (canon.has_line(Cell::kA)) {
        it->second = b.add_terminal(Outcome::kAliceWin, canon.to_string());
      } else if (canon.has_line(Cell::kB) || canon.full()) {
        it->second = b.add_terminal(Outcome::kBobWin, canon.to_string());
      } else {
        it->second = b.add_vertex(canon.to_string());
      }
      game.boards.push_back(canon);
    }
    return it->second;
  };
  b.set_start(get(TTTBoard()));
  for (std::size_t q = 0; q < game.boards.size(); ++q) {
    TTTBoard board = game.boards[q];
    auto v = static_cast<VertexId>(q);
    if (board.has_line(Cell::kA) || board.has_line(Cell::kB) || board.full()) continue;
    bool restricted = first_move_restriction && board.empty_count() == 9;
    for (int c = 0; c < 9; ++c) {
      if (board.at(c) != Cell::kEmpty) continue;
      bool allowed = !restricted ||
                     std::find(first_move_restriction->begin(),
                               first_move_restriction->end(), c) != first_move_restriction->end();
      if (allowed) b.add_move(Side::kAlice, v, get(board.with(c, Cell::kA)));
      b.add_move(Side::kBob, v, get(board.with(c, Cell::kB)));
    }
  }
  game.graph = std::move(b).build();
  return game;
}

GameGraph build_ttt(std::optional<std::vector<int>> first_move_restriction) {
  return build_ttt_game(std::move(first_move_restriction)).graph;
}

}  // namespace bidding
