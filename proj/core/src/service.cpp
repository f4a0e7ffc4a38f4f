#include "bidding/service.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "bidding/analysis.hpp"
#include "bidding/error.hpp"
#include "bidding/game_spec.hpp"
#include "bidding/oracle.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"

namespace bidding {

using Json = nlohmann::ordered_json;

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kWrongPhase:
    case ErrorCode::kWrongPlayer: return 409;
    case ErrorCode::kStateCapExceeded:
    case ErrorCode::kReconstructionFailed: return 422;
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kUnsupported:
    case ErrorCode::kOutsideWinningRegion:
    case ErrorCode::kIllegalAction:
    case ErrorCode::kParse: return 400;
  }
  return 500;
}

std::string error_body(ErrorCode code, std::string_view message) {
  Json j;
  j["code"] = error_code_name(code);
  j["message"] = message;
  return j.dump();
}

namespace {

HttpResponse ok(const Json& j, int status = 200) { return {status, j.dump()}; }

Json parse_body(std::string_view body) {
  if (body.empty()) return Json::object();
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) fail(ErrorCode::kParse, "body must be a JSON object");
  return j;
}

Side side_field(const Json& j) {
  std::string p = j.value("player", "");
  if (p == "alice") return Side::kAlice;
  if (p == "bob") return Side::kBob;
  fail(ErrorCode::kInvalidArgument, "player must be \"alice\" or \"bob\"");
}

std::string spec_field(const Json& j) {
  if (!j.contains("game") || !j.at("game").is_string()) {
    fail(ErrorCode::kInvalidArgument, "missing game spec");
  }
  return j.at("game").get<std::string>();
}

Rule rule_field(const Json& j) {
  return j.contains("rule") ? parse_rule(j.at("rule").get<std::string>()) : Rule::kStandard;
}

std::vector<std::string_view> split_path(std::string_view path) {
  std::vector<std::string_view> parts;
  while (!path.empty()) {
    if (path.front() == '/') {
      path.remove_prefix(1);
      continue;
    }
    auto n = path.find('/');
    parts.push_back(path.substr(0, n));
    if (n == std::string_view::npos) break;
    path.remove_prefix(n);
  }
  return parts;
}

}  // namespace

std::string SessionStore::add(PlaySession s) {
  auto e = std::make_shared<Entry>();
  e->session.emplace(std::move(s));
  std::lock_guard<std::mutex> lock(mu_);
  std::uint64_t id = next_++;
  sessions_[id] = std::move(e);
  return "s" + std::to_string(id);
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(std::string_view id) const {
  if (id.size() < 2 || id[0] != 's') return nullptr;
  std::uint64_t n = 0;
  for (char c : id.substr(1)) {
    if (c < '0' || c > '9') return nullptr;
    n = n * 10 + static_cast<std::uint64_t>(c - '0');
  }
  std::lock_guard<std::mutex> lock(mu_);
  auto it = sessions_.find(n);
  return it == sessions_.end() ? nullptr : it->second;
}

std::size_t SessionStore::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sessions_.size();
}

std::string SessionStore::snapshot() const {
  std::vector<std::pair<std::uint64_t, std::shared_ptr<Entry>>> entries;
  Json j;
  {
    std::lock_guard<std::mutex> lock(mu_);
    j["schema"] = "bidstore-1";
    j["next_id"] = next_;
    entries.assign(sessions_.begin(), sessions_.end());
  }
  Json list = Json::array();
  for (auto& [id, e] : entries) {
    std::lock_guard<std::mutex> lock(e->mu);
    Json s;
    s["id"] = "s" + std::to_string(id);
    s["session"] = Json::parse(e->session->to_json(true));
    list.push_back(s);
  }
  j["sessions"] = list;
  return j.dump(1);
}

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  if (options_.snapshot_path) {
    std::ifstream in(*options_.snapshot_path);
    if (in) {
      std::stringstream ss;
      ss << in.rdbuf();
      load_snapshot(ss.str());
    }
  }
}

std::shared_ptr<AiContext> Service::context(const std::string& spec) {
  {
    std::lock_guard<std::mutex> lock(contexts_mu_);
    auto it = contexts_.find(spec);
    if (it != contexts_.end()) return it->second;
  }
  OracleOptions oo;
  oo.state_cap = options_.state_cap;
  auto ctx = std::make_shared<AiContext>(resolve_game(spec), oo);
  std::lock_guard<std::mutex> lock(contexts_mu_);
  return contexts_.emplace(spec, ctx).first->second;
}

void Service::load_snapshot(std::string_view text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded() || j.value("schema", "") != "bidstore-1") {
    fail(ErrorCode::kParse, "not a bidstore-1 snapshot");
  }
  std::map<std::uint64_t, std::shared_ptr<SessionStore::Entry>> sessions;
  for (const auto& s : j.at("sessions")) {
    std::string id = s.at("id").get<std::string>();
    const Json& doc = s.at("session");
    auto ctx = context(doc.at("config").at("game").get<std::string>());
    auto e = std::make_shared<SessionStore::Entry>();
    e->session.emplace(PlaySession::from_json(doc.dump(), ctx));
    sessions[std::stoull(id.substr(1))] = e;
  }
  std::lock_guard<std::mutex> lock(store_.mu_);
  store_.sessions_ = std::move(sessions);
  store_.next_ = j.at("next_id").get<std::uint64_t>();
}

HttpResponse Service::handle(std::string_view method, std::string_view path,
                             std::string_view body) {
  try {
    return route(method, path, body);
  } catch (const Error& e) {
    return {http_status(e.code()), error_body(e.code(), e.what())};
  } catch (const nlohmann::json::exception& e) {
    return {400, error_body(ErrorCode::kParse, e.what())};
  } catch (const std::exception& e) {
    return {500, error_body(ErrorCode::kInvalidArgument, e.what())};
  }
}

HttpResponse Service::route(std::string_view method, std::string_view path,
                            std::string_view body) {
  auto parts = split_path(path.substr(0, path.find('?')));
  auto not_found = [&]() -> HttpResponse {
    return {404, error_body(ErrorCode::kNotFound, "no route for " + std::string(method) + " " +
                                                      std::string(path))};
  };
  if (parts.empty()) return not_found();
  if (parts[0] == "sessions") {
    if (parts.size() == 1 && method == "POST") return create_session(body);
    if (parts.size() == 2 && method == "GET") return get_session(std::string(parts[1]));
    if (parts.size() == 3 && method == "POST") {
      return session_action(std::string(parts[1]), parts[2], body);
    }
    return not_found();
  }
  if (parts[0] == "solve" && parts.size() == 2 && method == "POST") {
    if (parts[1] == "threshold") return solve_threshold(body);
    if (parts[1] == "richman") return solve_richman(body);
    if (parts[1] == "oracle") return solve_oracle(body);
    return not_found();
  }
  if (parts[0] == "admin" && parts.size() == 2 && parts[1] == "snapshot" && method == "POST") {
    return snapshot(body);
  }
  return not_found();
}

HttpResponse Service::create_session(std::string_view body) {
  Json j = parse_body(body);
  SessionConfig c = config_from_json(j.dump());
  if (!j.contains("split") && !j.contains("alice") && !j.contains("k")) {
    fail(ErrorCode::kInvalidArgument, "give k or split");
  }
  PlaySession s(c, context(c.game));
  std::string doc = s.to_json();
  std::string id = store_.add(std::move(s));
  Json out = Json::parse(doc);
  out["id"] = id;
  return ok(out, 201);
}

HttpResponse Service::get_session(const std::string& id) {
  auto e = store_.find(id);
  if (!e) fail(ErrorCode::kNotFound, "unknown session " + id);
  std::lock_guard<std::mutex> lock(e->mu);
  Json out = Json::parse(e->session->to_json());
  out["id"] = id;
  if (e->session->config().hints) out["hints"] = Json::parse(e->session->hints_json());
  return ok(out);
}

HttpResponse Service::session_action(const std::string& id, std::string_view action,
                                     std::string_view body) {
  auto e = store_.find(id);
  if (!e) fail(ErrorCode::kNotFound, "unknown session " + id);
  Json j = parse_body(body);
  std::lock_guard<std::mutex> lock(e->mu);
  // Work on a copy so a failed action leaves the stored session untouched.
  PlaySession s = *e->session;
  if (action == "bid") {
    if (!j.contains("bid") || !j.at("bid").is_number_integer()) {
      fail(ErrorCode::kInvalidArgument, "bid must be an integer");
    }
    s.submit_bid(side_field(j), j.at("bid").get<int>());
  } else if (action == "tie") {
    std::string c = j.value("choice", "");
    TieChoice choice;
    if (c == "self_win") {
      choice = TieChoice::kSelfWinPassToken;
    } else if (c == "opponent_wins") {
      choice = TieChoice::kOpponentWinsKeepToken;
    } else {
      fail(ErrorCode::kInvalidArgument, "choice must be self_win or opponent_wins");
    }
    s.resolve_tie(side_field(j), choice);
  } else if (action == "move") {
    std::string el = j.value("election", "self");
    Election election;
    if (el == "self") {
      election = Election::kSelf;
    } else if (el == "force_opponent") {
      election = Election::kForceOpponent;
    } else {
      fail(ErrorCode::kInvalidArgument, "election must be self or force_opponent");
    }
    Side player = side_field(j);
    if (j.contains("cell")) {
      s.move_cell(player, election, j.at("cell").get<int>());
    } else {
      std::optional<VertexId> to;
      if (j.contains("to")) to = j.at("to").get<VertexId>();
      s.elect_and_move(player, election, to);
    }
  } else {
    fail(ErrorCode::kNotFound, "unknown session action '" + std::string(action) + "'");
  }
  if (s.config().auto_ai) s.run_ai();
  *e->session = std::move(s);
  Json out = Json::parse(e->session->to_json());
  out["id"] = id;
  if (e->session->config().hints) out["hints"] = Json::parse(e->session->hints_json());
  return ok(out);
}

HttpResponse Service::solve_threshold(std::string_view body) {
  Json j = parse_body(body);
  auto ctx = context(spec_field(j));
  Rule rule = rule_field(j);
  int k_min = 0, k_max = 0;
  if (j.contains("k")) {
    k_min = k_max = j.at("k").get<int>();
  } else {
    k_min = j.value("k_min", 0);
    k_max = j.value("k_max", k_min);
  }
  if (k_min < 0 || k_max < k_min) fail(ErrorCode::kInvalidArgument, "bad k range");
  if (k_max - k_min + 1 > options_.max_k_range) {
    fail(ErrorCode::kStateCapExceeded, "k range too large");
  }
  const GameGraph& g = ctx->graph();
  VertexId v = g.start();
  if (j.contains("vertex")) {
    v = j.at("vertex").get<VertexId>();
    if (!g.valid_vertex(v)) fail(ErrorCode::kInvalidArgument, "vertex out of range");
  }
  if (!g.bounded()) fail(ErrorCode::kUnsupported, "thresholds need a bounded game; use /solve/oracle");
  ThresholdTable t = threshold_table(g, k_min, k_max, rule);
  Json values = Json::array();
  for (int k = k_min; k <= k_max; ++k) {
    values.push_back({{"k", k}, {"f", threshold_text(t.at(v, k), k)}});
  }
  Json out;
  out["game"] = spec_field(j);
  out["rule"] = to_string(rule);
  out["vertex"] = v;
  out["values"] = values;
  return ok(out);
}

HttpResponse Service::solve_richman(std::string_view body) {
  Json j = parse_body(body);
  auto ctx = context(spec_field(j));
  const GameGraph& g = ctx->graph();
  const RichmanProfile& p = ctx->richman();
  VertexId v = g.start();
  Json out;
  out["R"] = to_string(p.R[v]);
  out["R_A"] = to_string(p.R_A[v]);
  out["R_B"] = to_string(p.R_B[v]);
  out["delta"] = to_string(p.delta[v]);
  if (g.bounded()) out["P"] = to_string(random_turn_value(g)[v]);
  if (j.value("all_vertices", false)) {
    Json vs = Json::array();
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto id = static_cast<VertexId>(i);
      vs.push_back({{"vertex", id}, {"label", g.label(id)}, {"R", to_string(p.R[id])}});
    }
    out["vertices"] = vs;
  }
  return ok(out);
}

HttpResponse Service::solve_oracle(std::string_view body) {
  Json j = parse_body(body);
  auto ctx = context(spec_field(j));
  Rule rule = rule_field(j);
  if (!j.contains("k")) fail(ErrorCode::kInvalidArgument, "missing k");
  int k = j.at("k").get<int>();
  if (k < 0) fail(ErrorCode::kInvalidArgument, "k must be >= 0");
  auto t = ctx->table(k, rule);
  const GameGraph& g = ctx->graph();
  Json rows = Json::array();
  for (int a = 0; a <= k; ++a) {
    for (Holder h : t->holders()) {
      rows.push_back({{"alice", a},
                      {"bob", k - a},
                      {"holder", to_string(h)},
                      {"outcome", to_string(t->at(g.start(), a, h))}});
    }
  }
  Json out;
  out["rule"] = to_string(rule);
  out["k"] = k;
  out["start"] = rows;
  return ok(out);
}

HttpResponse Service::snapshot(std::string_view body) {
  Json j = parse_body(body);
  std::optional<std::string> path = options_.snapshot_path;
  if (j.contains("path")) path = j.at("path").get<std::string>();
  std::string text = store_.snapshot();
  Json out;
  out["sessions"] = store_.size();
  if (path) {
    std::ofstream f(*path);
    if (!f) fail(ErrorCode::kInvalidArgument, "cannot write snapshot to " + *path);
    f << text;
    out["path"] = *path;
  } else {
    out["snapshot"] = Json::parse(text);
  }
  return ok(out);
}

}  // namespace bidding
