#include "bidding/game_graph.hpp"

#include <algorithm>

#include <json.hpp>

#include "bidding/error.hpp"

namespace bidding {

std::string_view to_string(Side s) { return s == Side::kAlice ? "alice" : "bob"; }

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::kAliceWin: return "alice";
    case Outcome::kBobWin: return "bob";
    case Outcome::kTie: return "tie";
  }
  return "?";
}

std::optional<VertexId> GameGraph::find_label(std::string_view label) const {
  for (std::size_t v = 0; v < labels_.size(); ++v) {
    if (labels_[v] == label) return static_cast<VertexId>(v);
  }
  return std::nullopt;
}

bool GameGraph::operator==(const GameGraph& o) const {
  return start_ == o.start_ && red_ == o.red_ && blue_ == o.blue_ &&
         outcome_ == o.outcome_ && labels_ == o.labels_;
}

VertexId GraphBuilder::add_vertex(std::string label) {
  red_.emplace_back();
  blue_.emplace_back();
  outcome_.emplace_back();
  labels_.push_back(std::move(label));
  return static_cast<VertexId>(outcome_.size() - 1);
}

VertexId GraphBuilder::add_terminal(Outcome outcome, std::string label) {
  VertexId v = add_vertex(std::move(label));
  outcome_[v] = outcome;
  return v;
}

void GraphBuilder::add_move(Side side, VertexId from, VertexId to) {
  if (from < 0 || static_cast<std::size_t>(from) >= size()) {
    fail(ErrorCode::kInvalidArgument, "move from unknown vertex " + std::to_string(from));
  }
  auto& list = side == Side::kAlice ? red_[from] : blue_[from];
  if (std::find(list.begin(), list.end(), to) == list.end()) list.push_back(to);
}

GameGraph GraphBuilder::build() && {
  const std::size_t n = size();
  if (n == 0) fail(ErrorCode::kInvalidArgument, "graph has no vertices");
  if (start_ < 0 || static_cast<std::size_t>(start_) >= n) {
    fail(ErrorCode::kInvalidArgument, "start vertex out of range");
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (auto* list : {&red_[v], &blue_[v]}) {
      for (VertexId w : *list) {
        if (w < 0 || static_cast<std::size_t>(w) >= n) {
          fail(ErrorCode::kInvalidArgument,
               "move " + std::to_string(v) + "->" + std::to_string(w) + " has no target");
        }
      }
      std::sort(list->begin(), list->end());
    }
    bool has_moves = !red_[v].empty() || !blue_[v].empty();
    if (has_moves == outcome_[v].has_value()) {
      fail(ErrorCode::kInvalidArgument,
           "vertex " + std::to_string(v) +
               (has_moves ? " is terminal but has moves" : " has no moves and no outcome"));
    }
  }

  GameGraph g;
  g.start_ = start_;
  g.red_ = std::move(red_);
  g.blue_ = std::move(blue_);
  g.outcome_ = std::move(outcome_);
  g.labels_ = std::move(labels_);

  // Iterative DFS post-order; a back edge means the graph is cyclic.
  std::vector<int> depth(n, -1);
  std::vector<std::uint8_t> state(n, 0);  // 0 new, 1 open, 2 done
  std::vector<VertexId> order;
  order.reserve(n);
  bool cyclic = false;
  std::vector<std::pair<VertexId, std::size_t>> stack;
  auto succ = [&](VertexId v, std::size_t i) -> VertexId {
    std::size_t r = g.red_[v].size();
    return i < r ? g.red_[v][i] : g.blue_[v][i - r];
  };
  for (std::size_t root = 0; root < n && !cyclic; ++root) {
    if (state[root]) continue;
    stack.push_back({static_cast<VertexId>(root), 0});
    state[root] = 1;
    while (!stack.empty() && !cyclic) {
      auto& [v, i] = stack.back();
      std::size_t deg = g.red_[v].size() + g.blue_[v].size();
      if (i < deg) {
        VertexId w = succ(v, i++);
        if (state[w] == 1) {
          cyclic = true;
        } else if (state[w] == 0) {
          state[w] = 1;
          stack.push_back({w, 0});
        }
        continue;
      }
      int d = 0;
      for (std::size_t j = 0; j < deg; ++j) d = std::max(d, depth[succ(v, j)] + 1);
      depth[v] = d;
      state[v] = 2;
      order.push_back(v);
      stack.pop_back();
    }
  }
  if (!cyclic) {
    g.order_ = std::move(order);
    g.bounded_depth_ = depth[g.start_];
  }
  return g;
}

std::string graph_to_json(const GameGraph& g) {
  nlohmann::ordered_json doc;
  doc["format"] = "bidgraph-1";
  doc["start"] = g.start();
  auto vertices = nlohmann::ordered_json::array();
  for (std::size_t v = 0; v < g.size(); ++v) {
    nlohmann::ordered_json jv;
    auto id = static_cast<VertexId>(v);
    jv["id"] = id;
    jv["label"] = g.label(id);
    if (auto o = g.terminal(id)) {
      jv["outcome"] = std::string(to_string(*o));
    } else {
      jv["outcome"] = nullptr;
    }
    jv["red"] = std::vector<VertexId>(g.red_moves(id).begin(), g.red_moves(id).end());
    jv["blue"] = std::vector<VertexId>(g.blue_moves(id).begin(), g.blue_moves(id).end());
    vertices.push_back(std::move(jv));
  }
  doc["vertices"] = std::move(vertices);
  return doc.dump(1);
}

GameGraph graph_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("graph json: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "bidgraph-1") {
      fail(ErrorCode::kParse, "graph json: expected format \"bidgraph-1\"");
    }
    const auto& vs = doc.at("vertices");
    GraphBuilder b;
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const auto& jv = vs[i];
      if (jv.contains("id") && jv["id"].get<std::size_t>() != i) {
        fail(ErrorCode::kParse, "graph json: vertex ids must be 0..n-1 in order");
      }
      std::string label = jv.value("label", "");
      const auto& out = jv.contains("outcome") ? jv["outcome"] : nlohmann::json();
      if (out.is_null()) {
        b.add_vertex(label);
      } else {
        std::string o = out.get<std::string>();
        Outcome oc;
        if (o == "alice") oc = Outcome::kAliceWin;
        else if (o == "bob") oc = Outcome::kBobWin;
        else if (o == "tie") oc = Outcome::kTie;
        else fail(ErrorCode::kParse, "graph json: unknown outcome '" + o + "'");
        b.add_terminal(oc, label);
      }
    }
    for (std::size_t i = 0; i < vs.size(); ++i) {
      auto from = static_cast<VertexId>(i);
      for (VertexId w : vs[i].value("red", std::vector<VertexId>{})) b.add_move(Side::kAlice, from, w);
      for (VertexId w : vs[i].value("blue", std::vector<VertexId>{})) b.add_move(Side::kBob, from, w);
    }
    b.set_start(doc.at("start").get<VertexId>());
    return std::move(b).build();
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::kParse, std::string("graph json: ") + e.what());
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kParse) throw;
    fail(ErrorCode::kParse, std::string("graph json: ") + e.what());
  }
}

}  // namespace bidding
