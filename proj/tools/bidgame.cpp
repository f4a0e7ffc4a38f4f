// bidgame: command-line front end for the bidding-game solver.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "bidding/analysis.hpp"
#include "bidding/error.hpp"
#include "bidding/game_spec.hpp"
#include "bidding/oracle.hpp"
#include "bidding/play.hpp"
#include "bidding/report.hpp"
#include "bidding/richman.hpp"
#include "bidding/service.hpp"
#include "bidding/threshold.hpp"

namespace {

using namespace bidding;

struct Common {
  std::string game = "ttt";
  std::string rule = "standard";
  std::string format = "text";
  std::string out;
  std::string k_range;
  int k = -1;
  int jobs = 1;
};

void add_common(CLI::App* cmd, Common& c, bool with_k) {
  cmd->add_option("--game,-g", c.game, "game spec or file:graph.json")->capture_default_str();
  cmd->add_option("--rule,-r", c.rule, "standard | mtt | lb | lf")->capture_default_str();
  cmd->add_option("--format,-f", c.format, "text | csv | json | paper-table")
      ->capture_default_str();
  cmd->add_option("--out,-o", c.out, "write output here instead of stdout");
  cmd->add_option("--jobs,-j", c.jobs, "threads for k sweeps")->capture_default_str();
  if (with_k) {
    cmd->add_option("--k,-k", c.k, "chip total");
    cmd->add_option("--k-range", c.k_range, "chip totals a..b");
  }
}

std::pair<int, int> k_bounds(const Common& c, int default_lo, int default_hi) {
  if (!c.k_range.empty()) {
    auto dots = c.k_range.find("..");
    if (dots == std::string::npos) throw CLI::ValidationError("--k-range", "expected a..b");
    try {
      int lo = std::stoi(c.k_range.substr(0, dots));
      int hi = std::stoi(c.k_range.substr(dots + 2));
      if (lo < 0 || hi < lo) throw CLI::ValidationError("--k-range", "need 0 <= a <= b");
      return {lo, hi};
    } catch (const std::logic_error&) {
      throw CLI::ValidationError("--k-range", "expected integers a..b");
    }
  }
  if (c.k >= 0) return {c.k, c.k};
  return {default_lo, default_hi};
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out);
  if (!f) fail(ErrorCode::kInvalidArgument, "cannot write " + c.out);
  f << text;
}

VertexId pick_vertex(const GameGraph& g, const std::string& label) {
  if (label.empty()) return g.start();
  auto v = g.find_label(label);
  if (!v) fail(ErrorCode::kInvalidArgument, "no vertex labeled '" + label + "'");
  return *v;
}

// Line-oriented play loop on stdin/stdout.
int play_loop(PlaySession& s, std::istream& in, std::ostream& out) {
  auto show = [&] {
    out << "phase " << to_string(s.phase()) << "  position " << s.graph().label(s.position())
        << "  alice " << to_string(s.holding(Side::kAlice)) << "  bob "
        << to_string(s.holding(Side::kBob));
    if (auto a = s.actor()) out << "  actor " << to_string(*a);
    if (s.outcome()) out << "  outcome " << to_string(*s.outcome());
    out << "\n";
    if (s.board()) {
      std::string b = s.board()->to_string();
      for (int r = 0; r < 3; ++r) out << "  " << b.substr(3 * r, 3) << "\n";
    }
    if (s.phase() == Phase::kAwaitingMove && !s.board()) {
      out << "  moves:";
      for (VertexId w : s.legal_moves()) out << " " << w << "(" << s.graph().label(w) << ")";
      out << "\n";
    }
  };
  auto side_of = [](const std::string& p) {
    if (p == "alice" || p == "a") return Side::kAlice;
    if (p == "bob" || p == "b") return Side::kBob;
    fail(ErrorCode::kInvalidArgument, "player must be alice or bob");
  };
  out << "commands: bid <player> <n> | tie <player> self_win|opponent_wins |\n"
         "          move <player> self|force [vertex|cell] | show | log | quit\n";
  show();
  std::string line;
  while (s.phase() != Phase::kFinished && out << "> " && std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cmd, player, arg;
    ls >> cmd;
    if (cmd.empty()) continue;
    try {
      if (cmd == "quit") break;
      if (cmd == "show") {
        show();
        continue;
      }
      if (cmd == "log") {
        out << s.to_json() << "\n";
        continue;
      }
      ls >> player;
      Side p = side_of(player);
      if (cmd == "bid") {
        int n = -1;
        if (!(ls >> n)) fail(ErrorCode::kInvalidArgument, "bid needs an amount");
        s.submit_bid(p, n);
      } else if (cmd == "tie") {
        ls >> arg;
        if (arg != "self_win" && arg != "opponent_wins") {
          fail(ErrorCode::kInvalidArgument, "tie choice must be self_win or opponent_wins");
        }
        s.resolve_tie(p, arg == "self_win" ? TieChoice::kSelfWinPassToken
                                           : TieChoice::kOpponentWinsKeepToken);
      } else if (cmd == "move") {
        ls >> arg;
        Election e = arg == "force" ? Election::kForceOpponent : Election::kSelf;
        if (arg != "self" && arg != "force") {
          fail(ErrorCode::kInvalidArgument, "election must be self or force");
        }
        int target = -1;
        bool has_target = static_cast<bool>(ls >> target);
        if (has_target && s.board()) {
          s.move_cell(p, e, target);
        } else {
          s.elect_and_move(p, e, has_target ? std::optional<VertexId>(target) : std::nullopt);
        }
      } else {
        fail(ErrorCode::kInvalidArgument, "unknown command '" + cmd + "'");
      }
      s.run_ai();
      show();
    } catch (const Error& err) {
      out << "error: " << err.what() << "\n";
    }
  }
  if (s.outcome()) {
    out << "game over: " << to_string(*s.outcome()) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver and play engine for discrete bidding games"};
  app.require_subcommand(1);

  Common c;
  bool all_vertices = false;
  std::string vertex;
  std::string other_game;
  int k_max = 64;
  std::string split = "4*/4";
  std::string ai = "none";
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string snapshot;
  std::string references;

  auto* richman_cmd = app.add_subcommand("richman", "exact Richman values");
  add_common(richman_cmd, c, false);
  richman_cmd->add_flag("--all-vertices", all_vertices, "print every vertex");

  auto* threshold_cmd = app.add_subcommand("threshold", "critical thresholds f(G,k)");
  add_common(threshold_cmd, c, true);
  threshold_cmd->add_option("--vertex", vertex, "vertex label (default: start)");

  auto* oracle_cmd = app.add_subcommand("oracle", "retrograde outcome table");
  add_common(oracle_cmd, c, true);
  oracle_cmd->add_flag("--all-vertices", all_vertices, "print every vertex");

  auto* compare_cmd = app.add_subcommand("compare", "partial-order verdict between two games");
  add_common(compare_cmd, c, false);
  compare_cmd->add_option("--other,-H", other_game, "second game spec")->required();
  compare_cmd->add_option("--k-max", k_max, "largest chip total computed")->capture_default_str();

  auto* study_cmd = app.add_subcommand("ttt-study", "Tic-Tac-Toe first-move study");
  add_common(study_cmd, c, true);
  study_cmd->add_option("--references", references,
                        "period tables of named positions to identify");

  auto* play_cmd = app.add_subcommand("play", "interactive session on stdin");
  add_common(play_cmd, c, false);
  play_cmd->add_option("--split", split, "starting chips, e.g. 4*/4")->capture_default_str();
  play_cmd->add_option("--ai", ai, "none | alice | bob | both")->capture_default_str();

  auto* serve_cmd = app.add_subcommand("serve", "JSON-over-HTTP service");
  serve_cmd->add_option("--host", host, "bind address")->capture_default_str();
  serve_cmd->add_option("--port", port, "port (default $BIDGAME_PORT or 8080)");
  serve_cmd->add_option("--snapshot", snapshot, "snapshot file for /admin/snapshot");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Format format = Format::kText;
  try {
    format = parse_format(c.format);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (richman_cmd->parsed()) {
      GameGraph g = parse_game_spec(c.game);
      emit(c, format_richman(g, richman(g), all_vertices, format));
    } else if (threshold_cmd->parsed()) {
      GameGraph g = parse_game_spec(c.game);
      auto [lo, hi] = k_bounds(c, 0, 16);
      ThresholdTable t = threshold_table(g, lo, hi, parse_rule(c.rule), c.jobs);
      std::optional<PeriodicityConstants> pc;
      if (format == Format::kPaperTable) pc = periodicity_constants(g);
      emit(c, format_thresholds(g, t, pick_vertex(g, vertex), format, pc ? &*pc : nullptr));
    } else if (oracle_cmd->parsed()) {
      GameGraph g = parse_game_spec(c.game);
      auto [lo, hi] = k_bounds(c, 4, 4);
      std::string text;
      for (int k = lo; k <= hi; ++k) {
        text += format_outcomes(g, solve_chip_states(g, k, parse_rule(c.rule)), all_vertices,
                                format);
      }
      emit(c, text);
    } else if (compare_cmd->parsed()) {
      GameGraph g = parse_game_spec(c.game);
      GameGraph h = parse_game_spec(other_game);
      emit(c, format_comparison(compare_games(g, h, k_max, parse_rule(c.rule)), format));
    } else if (study_cmd->parsed()) {
      auto [lo, hi] = k_bounds(c, 0, 255);
      std::vector<PeriodTable> refs;
      if (!references.empty()) {
        std::ifstream f(references);
        if (!f) fail(ErrorCode::kInvalidArgument, "cannot read " + references);
        std::stringstream ss;
        ss << f.rdbuf();
        refs = parse_period_tables(ss.str());
      }
      emit(c, format_study(ttt_study(lo, hi, c.jobs, refs), format));
    } else if (play_cmd->parsed()) {
      SessionConfig cfg;
      cfg.game = c.game;
      cfg.rule = parse_rule(c.rule);
      apply_split(cfg, split);
      cfg.ai = parse_ai_control(ai);
      auto ctx = std::make_shared<AiContext>(resolve_game(c.game));
      PlaySession s(cfg, ctx);
      return play_loop(s, std::cin, std::cout);
    } else if (serve_cmd->parsed()) {
      if (serve_cmd->count("--port") == 0) {
        if (const char* env = std::getenv("BIDGAME_PORT")) port = std::atoi(env);
      }
      ServiceOptions opts;
      if (!snapshot.empty()) opts.snapshot_path = snapshot;
      Service svc(opts);
      std::cerr << "serving on " << host << ":" << port << "\n";
      serve(svc, host, port);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    if (format == Format::kJson) {
      std::cout << format_error(error_code_name(e.code()), e.what(), format);
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
