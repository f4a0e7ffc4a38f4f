#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "bidding/game_graph.hpp"

namespace bidding {

enum class Cell : std::uint8_t { kEmpty, kA, kB };

inline constexpr int kCenterCell = 4;
inline constexpr int kCornerCell = 0;
inline constexpr int kEdgeCell = 1;

// Row-major 3x3 board. Text form is nine characters over {., A, B}.
class TTTBoard {
 public:
  TTTBoard() { cells_.fill(Cell::kEmpty); }

  static TTTBoard from_string(std::string_view text);
  std::string to_string() const;

  Cell at(int cell) const { return cells_[cell]; }
  TTTBoard with(int cell, Cell value) const;

  bool has_line(Cell who) const;
  bool full() const;
  int empty_count() const;

  // Board after applying one of the eight dihedral symmetries.
  TTTBoard transformed(int symmetry) const;
  // Lexicographic minimum (over the text form) of all eight images.
  TTTBoard canonical() const;
  // Index of a symmetry g with transformed(g) == canonical().
  int canonicalizing_symmetry() const;

  // Base-3 code, cell 0 most significant.
  std::uint32_t code() const;

  bool operator==(const TTTBoard&) const = default;

 private:
  std::array<Cell, 9> cells_;
};

// Cell permutations: image cell of `cell` under symmetry `g`.
int map_cell(int symmetry, int cell);
int inverse_symmetry(int symmetry);

// The Tic-Tac-Toe variant in which Bob wins any drawn game, over D4-reduced
// boards. `first_move_restriction`, when present, limits Alice's moves from
// the empty board to the given cells.
struct TTTGame {
  GameGraph graph;
  std::vector<TTTBoard> boards;  // canonical board per vertex
  std::unordered_map<std::uint32_t, VertexId> index;  // canonical code -> vertex

  // Vertex of an arbitrary (not necessarily canonical) board.
  std::optional<VertexId> vertex_of(const TTTBoard& board) const;
};

TTTGame build_ttt_game(std::optional<std::vector<int>> first_move_restriction = {});
GameGraph build_ttt(std::optional<std::vector<int>> first_move_restriction = {});

}  // namespace bidding
