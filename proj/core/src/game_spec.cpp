#include "bidding/game_spec.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "bidding/builders.hpp"
#include "bidding/error.hpp"

namespace bidding {
namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view text) : text_(text) {}

  ResolvedGame parse_top() {
    ResolvedGame r;
    r.spec = std::string(text_);
    skip_space();
    std::size_t start = pos_;
    std::string head = read_head();
    if (!at('(') && (head == "ttt" || head.rfind("ttt:", 0) == 0)) {
      auto game = std::make_shared<TTTGame>(build_ttt_game(ttt_restriction(head)));
      r.graph = std::shared_ptr<const GameGraph>(game, &game->graph);
      r.ttt = game;
      expect_end();
      return r;
    }
    pos_ = start;
    r.graph = std::make_shared<const GameGraph>(parse_term());
    expect_end();
    return r;
  }

 private:
  GameGraph parse_term() {
    skip_space();
    std::string head = read_head();
    if (head.empty()) error("expected a game");
    if (at('(')) {
      ++pos_;
      GameGraph g = parse_call(head);
      skip_space();
      if (!at(')')) error("expected ')'");
      ++pos_;
      return g;
    }
    return parse_atom(head);
  }

  GameGraph parse_call(const std::string& name) {
    if (name == "wedge") {
      std::vector<GameGraph> parts{parse_term()};
      while (skip_space(), at(',')) {
        ++pos_;
        parts.push_back(parse_term());
      }
      if (parts.size() < 2) error("wedge needs at least two games");
      return parts.size() == 2 ? wedge(parts[0], parts[1]) : wedge_all(parts);
    }
    if (name == "rev") return reverse(parse_term());
    if (name == "trunc") {
      GameGraph g = parse_term();
      comma();
      return truncate(g, read_int(read_head()));
    }
    if (name == "root") {
      GameGraph g = parse_term();
      comma();
      std::string label = read_head();
      auto v = g.find_label(label);
      if (!v) fail(ErrorCode::kNotFound, "no vertex labeled '" + label + "'");
      return with_start(g, *v);
    }
    error("unknown combinator '" + name + "'");
  }

  GameGraph parse_atom(const std::string& head) {
    auto colon = head.find(':');
    std::string name = head.substr(0, colon);
    std::string arg = colon == std::string::npos ? "" : head.substr(colon + 1);
    auto count = [&] {
      if (arg.empty()) error("'" + name + "' needs a parameter, e.g. " + name + ":2");
      return read_int(arg);
    };
    if (name == "A" && arg.empty()) return build_primitive({PrimitiveKind::kA});
    if (name == "B" && arg.empty()) return build_primitive({PrimitiveKind::kB});
    if (name == "E" && arg.empty()) return build_primitive({PrimitiveKind::kE});
    if (name == "smw" && arg.empty()) return build_primitive({PrimitiveKind::kSecondMoveWins});
    if (name == "apow") return build_primitive({PrimitiveKind::kAPow, count()});
    if (name == "bpow") return build_primitive({PrimitiveKind::kBPow, count()});
    if (name == "bidzero") return build_primitive({PrimitiveKind::kBidZero, count()});
    if (name == "ladies") return build_primitive({PrimitiveKind::kLadiesBlocks, count()});
    if (name == "alicepath") return build_primitive({PrimitiveKind::kAlicePath, count()});
    if (name == "tug") return build_tug(count());
    if (name == "ult") return build_ult(count());
    if (name == "ttt") return build_ttt(ttt_restriction(head));
    if (name == "file") {
      std::ifstream in(arg);
      if (!in) fail(ErrorCode::kNotFound, "cannot open graph file '" + arg + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      return graph_from_json(ss.str());
    }
    error("unknown game '" + head + "'");
  }

  std::optional<std::vector<int>> ttt_restriction(const std::string& head) {
    if (head == "ttt") return std::nullopt;
    if (head == "ttt:center") return std::vector<int>{kCenterCell};
    if (head == "ttt:corner") return std::vector<int>{kCornerCell};
    if (head == "ttt:edge") return std::vector<int>{kEdgeCell};
    const std::string prefix = "ttt:cells=";
    if (head.rfind(prefix, 0) != 0) error("unknown ttt variant '" + head + "'");
    std::vector<int> cells;
    std::string list = head.substr(prefix.size());
    std::size_t i = 0;
    while (i <= list.size()) {
      std::size_t j = list.find_first_of(",+", i);
      if (j == std::string::npos) j = list.size();
      cells.push_back(read_int(list.substr(i, j - i)));
      i = j + 1;
    }
    return cells;
  }

  // A bare token: everything up to a delimiter. Cell lists of ttt:cells=
  // may contain commas followed by digits.
  std::string read_head() {
    skip_space();
    std::size_t start = pos_;
    bool file = text_.substr(pos_).rfind("file:", 0) == 0;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '(' && !file) break;
      if (c == ')') break;
      if (c == ',') {
        std::string_view sofar = text_.substr(start, pos_ - start);
        bool cells = sofar.rfind("ttt:cells=", 0) == 0;
        if (!(cells && pos_ + 1 < text_.size() &&
              std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))) {
          break;
        }
      }
      if (std::isspace(static_cast<unsigned char>(c)) && !file) break;
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  int read_int(const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size()) {
      error("expected an integer, got '" + s + "'");
    }
    return v;
  }

  void comma() {
    skip_space();
    if (!at(',')) error("expected ','");
    ++pos_;
  }

  void expect_end() {
    skip_space();
    if (pos_ != text_.size()) error("trailing characters");
  }

  bool at(char c) const { return pos_ < text_.size() && text_[pos_] == c; }
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  [[noreturn]] void error(const std::string& msg) const {
    fail(ErrorCode::kParse, "game spec '" + std::string(text_) + "' at " +
                                std::to_string(pos_) + ": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ResolvedGame resolve_game(std::string_view spec) { return SpecParser(spec).parse_top(); }

GameGraph parse_game_spec(std::string_view spec) { return *resolve_game(spec).graph; }

}  // namespace bidding
