#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bidding {

using VertexId = std::int32_t;

enum class Side : std::uint8_t { kAlice, kBob };
enum class Outcome : std::uint8_t { kAliceWin, kBobWin, kTie };

constexpr Side other(Side s) { return s == Side::kAlice ? Side::kBob : Side::kAlice; }
std::string_view to_string(Side s);
std::string_view to_string(Outcome o);

// Colored directed graph of positions. Red moves belong to Alice, blue moves
// to Bob. Immutable once built; see GraphBuilder.
class GameGraph {
 public:
  GameGraph() = default;

  std::size_t size() const { return red_.size(); }
  VertexId start() const { return start_; }

  std::span<const VertexId> red_moves(VertexId v) const { return red_[v]; }
  std::span<const VertexId> blue_moves(VertexId v) const { return blue_[v]; }
  std::span<const VertexId> moves(Side side, VertexId v) const {
    return side == Side::kAlice ? red_moves(v) : blue_moves(v);
  }

  std::optional<Outcome> terminal(VertexId v) const { return outcome_[v]; }
  bool is_terminal(VertexId v) const { return outcome_[v].has_value(); }

  // Length of the longest play from any vertex when the graph is acyclic;
  // nullopt for graphs with cycles.
  std::optional<int> bounded_depth() const { return bounded_depth_; }
  bool bounded() const { return bounded_depth_.has_value(); }

  // Vertices ordered so that every move target precedes its source. Empty
  // for cyclic graphs.
  const std::vector<VertexId>& successors_first() const { return order_; }

  const std::string& label(VertexId v) const { return labels_[v]; }
  std::optional<VertexId> find_label(std::string_view label) const;

  bool valid_vertex(VertexId v) const {
    return v >= 0 && static_cast<std::size_t>(v) < size();
  }

  bool operator==(const GameGraph& other) const;

 private:
  friend class GraphBuilder;

  VertexId start_ = 0;
  std::vector<std::vector<VertexId>> red_;
  std::vector<std::vector<VertexId>> blue_;
  std::vector<std::optional<Outcome>> outcome_;
  std::vector<std::string> labels_;
  std::optional<int> bounded_depth_;
  std::vector<VertexId> order_;
};

class GraphBuilder {
 public:
  VertexId add_vertex(std::string label = {});
  VertexId add_terminal(Outcome outcome, std::string label = {});
  // Parallel moves of the same color collapse into one.
  void add_move(Side side, VertexId from, VertexId to);
  void add_both(VertexId from, VertexId to) {
    add_move(Side::kAlice, from, to);
    add_move(Side::kBob, from, to);
  }
  void set_start(VertexId v) { start_ = v; }
  std::size_t size() const { return outcome_.size(); }

  // Validates the structure: a vertex is terminal iff it has no moves, all
  // targets exist. Computes boundedness.
  GameGraph build() &&;

 private:
  VertexId start_ = 0;
  std::vector<std::vector<VertexId>> red_;
  std::vector<std::vector<VertexId>> blue_;
  std::vector<std::optional<Outcome>> outcome_;
  std::vector<std::string> labels_;
};

// Versioned JSON document, format tag "bidgraph-1".
std::string graph_to_json(const GameGraph& g);
GameGraph graph_from_json(std::string_view text);

}  // namespace bidding
