#include "bidding/report.hpp"

#include <sstream>

#include <json.hpp>

#include "bidding/error.hpp"

namespace bidding {

using Json = nlohmann::ordered_json;

Format parse_format(std::string_view text) {
  if (text == "text") return Format::kText;
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  if (text == "paper-table") return Format::kPaperTable;
  fail(ErrorCode::kInvalidArgument, "unknown format '" + std::string(text) + "'");
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void unsupported(Format f, std::string_view what) {
  if (f == Format::kPaperTable) {
    fail(ErrorCode::kInvalidArgument, "paper-table format is not available for " +
                                          std::string(what));
  }
}

}  // namespace

std::string format_richman(const GameGraph& g, const RichmanProfile& p, bool all_vertices,
                           Format format) {
  unsupported(format, "richman");
  std::ostringstream os;
  auto vertex_range = [&](auto&& fn) {
    if (!all_vertices) {
      fn(g.start());
      return;
    }
    for (std::size_t v = 0; v < g.size(); ++v) fn(static_cast<VertexId>(v));
  };
  switch (format) {
    case Format::kText:
      vertex_range([&](VertexId v) {
        if (all_vertices) os << v << " " << g.label(v) << " ";
        os << "R = " << to_string(p.R[v]);
        if (p.P) os << "  P = " << to_string((*p.P)[v]);
        if (!g.is_terminal(v)) {
          os << "  R_A = " << to_string(p.R_A[v]) << "  R_B = " << to_string(p.R_B[v])
             << "  delta = " << to_string(p.delta[v]);
        }
        os << "\n";
      });
      break;
    case Format::kCsv:
      os << "vertex,label,R,R_A,R_B,delta" << (p.P ? ",P" : "") << "\n";
      vertex_range([&](VertexId v) {
        os << v << "," << csv_field(g.label(v)) << "," << to_string(p.R[v]) << ","
           << to_string(p.R_A[v]) << "," << to_string(p.R_B[v]) << ","
           << to_string(p.delta[v]);
        if (p.P) os << "," << to_string((*p.P)[v]);
        os << "\n";
      });
      break;
    default: {
      Json rows = Json::array();
      vertex_range([&](VertexId v) {
        Json r;
        r["vertex"] = v;
        r["label"] = g.label(v);
        r["R"] = to_string(p.R[v]);
        r["R_A"] = to_string(p.R_A[v]);
        r["R_B"] = to_string(p.R_B[v]);
        r["delta"] = to_string(p.delta[v]);
        if (p.P) r["P"] = to_string((*p.P)[v]);
        rows.push_back(r);
      });
      Json j;
      j["start"] = g.start();
      j["vertices"] = rows;
      os << j.dump(1) << "\n";
    }
  }
  return os.str();
}

std::string format_thresholds(const GameGraph& g, const ThresholdTable& t, VertexId v,
                              Format format, const PeriodicityConstants* constants) {
  std::ostringstream os;
  switch (format) {
    case Format::kText:
      if (t.k_min == t.k_max) {
        os << threshold_text(t.at(v, t.k_min), t.k_min) << "\n";
      } else {
        for (int k = t.k_min; k <= t.k_max; ++k) {
          os << k << " " << threshold_text(t.at(v, k), k) << "\n";
        }
      }
      break;
    case Format::kCsv:
      os << "k,f\n";
      for (int k = t.k_min; k <= t.k_max; ++k) {
        os << k << "," << threshold_text(t.at(v, k), k) << "\n";
      }
      break;
    case Format::kJson: {
      Json j;
      j["vertex"] = v;
      j["label"] = g.label(v);
      j["rule"] = to_string(t.rule);
      Json vals = Json::array();
      for (int k = t.k_min; k <= t.k_max; ++k) {
        vals.push_back({{"k", k}, {"f", threshold_text(t.at(v, k), k)}});
      }
      j["values"] = vals;
      os << j.dump(1) << "\n";
      break;
    }
    case Format::kPaperTable: {
      if (!constants || t.k_min != 0) {
        fail(ErrorCode::kInvalidArgument, "paper-table needs k from 0 and a period");
      }
      PeriodTable p;
      p.M = constants->M;
      p.m = constants->m;
      for (int k = t.k_min; k <= t.k_max; ++k) p.entries.push_back(threshold_text(t.at(v, k), k));
      os << render_period_table(p);
      break;
    }
  }
  return os.str();
}

std::string format_outcomes(const GameGraph& g, const OutcomeTable& t, bool all_vertices,
                            Format format) {
  unsupported(format, "oracle");
  std::ostringstream os;
  Json rows = Json::array();
  if (format == Format::kCsv) os << "vertex,label,alice,bob,holder,outcome\n";
  for (std::size_t vi = 0; vi < g.size(); ++vi) {
    auto v = static_cast<VertexId>(vi);
    if (!all_vertices && v != g.start()) continue;
    for (int a = 0; a <= t.k(); ++a) {
      for (Holder h : t.holders()) {
        StateOutcome o = t.at(v, a, h);
        if (format == Format::kText) {
          if (all_vertices) os << g.label(v) << " ";
          os << "alice=" << a << " bob=" << t.k() - a << " holder=" << to_string(h) << " "
             << to_string(o) << "\n";
        } else if (format == Format::kCsv) {
          os << v << "," << csv_field(g.label(v)) << "," << a << "," << t.k() - a << ","
             << to_string(h) << "," << to_string(o) << "\n";
        } else {
          rows.push_back({{"vertex", v},
                          {"label", g.label(v)},
                          {"alice", a},
                          {"bob", t.k() - a},
                          {"holder", to_string(h)},
                          {"outcome", to_string(o)}});
        }
      }
    }
  }
  if (format == Format::kJson) {
    Json j;
    j["rule"] = to_string(t.rule());
    j["k"] = t.k();
    j["states"] = rows;
    os << j.dump(1) << "\n";
  }
  return os.str();
}

std::string format_comparison(const Comparison& c, Format format) {
  unsupported(format, "compare");
  std::ostringstream os;
  auto opt = [](const std::optional<int>& x) { return x ? std::to_string(*x) : std::string("-"); };
  switch (format) {
    case Format::kText:
      os << to_string(c.order) << (c.certified ? " (certified for all k)" : " (for k <= k_max)")
         << "\n";
      if (c.witness_less) os << "f(G," << *c.witness_less << ") < f(H," << *c.witness_less << ")\n";
      if (c.witness_greater) {
        os << "f(G," << *c.witness_greater << ") > f(H," << *c.witness_greater << ")\n";
      }
      break;
    case Format::kCsv:
      os << "order,certified,witness_less,witness_greater,period,stable_from\n"
         << to_string(c.order) << "," << (c.certified ? "true" : "false") << ","
         << opt(c.witness_less) << "," << opt(c.witness_greater) << "," << c.period << ","
         << c.stable_from << "\n";
      break;
    default: {
      Json j;
      j["order"] = to_string(c.order);
      j["certified"] = c.certified;
      j["witness_less"] = c.witness_less ? Json(*c.witness_less) : Json();
      j["witness_greater"] = c.witness_greater ? Json(*c.witness_greater) : Json();
      j["period"] = c.period;
      j["stable_from"] = c.stable_from;
      os << j.dump(1) << "\n";
    }
  }
  return os.str();
}

std::string format_study(const TTTStudy& s, Format format) {
  std::ostringstream os;
  switch (format) {
    case Format::kPaperTable:
      os << render_period_table(s.center_table) << "\n" << render_period_table(s.corner_table);
      break;
    case Format::kText:
    case Format::kCsv:
      if (format == Format::kText) {
        os << "# R(TTT) = " << to_string(s.R) << "  center " << to_string(s.R_center)
           << "  corner " << to_string(s.R_corner) << "\n";
      }
      os << "k,f,f_center,f_corner,center_optimal,corner_optimal,edge_optimal\n";
      for (const auto& r : s.rows) {
        os << r.k << "," << r.f << "," << r.f_center << "," << r.f_corner << ","
           << r.center_optimal << "," << r.corner_optimal << "," << r.edge_optimal << "\n";
      }
      if (format == Format::kText) {
        for (const auto& p : s.positions) {
          os << "# position " << p.name << ": "
             << (p.board ? "identified " + *p.board
                         : "unresolved, closest " + p.closest + " with " +
                               std::to_string(p.mismatches) + " mismatches")
             << "\n";
        }
      }
      break;
    case Format::kJson: {
      Json j;
      j["R"] = to_string(s.R);
      j["R_center"] = to_string(s.R_center);
      j["R_corner"] = to_string(s.R_corner);
      auto consts = [](const PeriodicityConstants& c) {
        return Json{{"M", c.M}, {"m", c.m}, {"m_bar", c.m_bar}};
      };
      j["constants"] = {{"unrestricted", consts(s.unrestricted)},
                        {"center", consts(s.center)},
                        {"corner", consts(s.corner)}};
      Json rows = Json::array();
      for (const auto& r : s.rows) {
        rows.push_back({{"k", r.k},
                        {"f", r.f},
                        {"f_center", r.f_center},
                        {"f_corner", r.f_corner},
                        {"center_optimal", r.center_optimal},
                        {"corner_optimal", r.corner_optimal},
                        {"edge_optimal", r.edge_optimal}});
      }
      j["rows"] = rows;
      auto table = [](const PeriodTable& t) {
        return Json{{"name", t.name}, {"M", t.M}, {"m", t.m}, {"entries", t.entries}};
      };
      j["center_table"] = table(s.center_table);
      j["corner_table"] = table(s.corner_table);
      Json ab = Json::array();
      for (const auto& t : s.abstract_tables) ab.push_back(table(t));
      j["abstract_tables"] = ab;
      Json pos = Json::array();
      for (const auto& p : s.positions) {
        pos.push_back({{"name", p.name},
                       {"status", p.board ? "identified" : "unresolved"},
                       {"board", p.board ? Json(*p.board) : Json()},
                       {"closest", p.closest},
                       {"mismatches", p.mismatches}});
      }
      j["positions"] = pos;
      os << j.dump(1) << "\n";
    }
  }
  return os.str();
}

std::string format_error(std::string_view code, std::string_view message, Format format) {
  if (format == Format::kJson) {
    Json j;
    j["error"] = {{"code", code}, {"message", message}};
    return j.dump() + "\n";
  }
  return "error: " + std::string(message) + "\n";
}

}  // namespace bidding
