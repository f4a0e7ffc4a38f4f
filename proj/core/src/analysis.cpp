#include "bidding/analysis.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "bidding/builders.hpp"
#include "bidding/error.hpp"
#include "bidding/ttt.hpp"

namespace bidding {

PeriodicityConstants periodicity_constants(const GameGraph& g, const RichmanOptions& options) {
  RichmanProfile p = richman(g, options);
  RichmanProfile q = richman(reverse(g), options);
  PeriodicityConstants c;
  std::int64_t M = 1;
  for (std::size_t v = 0; v < g.size(); ++v) {
    M = lcm_of_denominators(M, p.R[v]);
    M = lcm_of_denominators(M, p.delta[v]);
  }
  // With Tie terminals R of the reverse is not 1 - R; cover it as well so
  // m_bar stays integral. Win/lose games are unaffected.
  M = lcm_of_denominators(M, q.R[g.start()]);
  c.M = M;
  c.m = (p.at_start(g) * M).numerator();
  c.m_bar = (q.R[g.start()] * M).numerator();
  return c;
}

StateOutcome PeriodicityCertificate::base_outcome(int alice, int bob, Holder holder) const {
  int k = alice + bob;
  if (k < 0 || k > base_k) fail(ErrorCode::kInvalidArgument, "outside the certified base");
  return base[k]->at(start, alice, holder);
}

PeriodicityCertificate make_certificate(const GameGraph& g, int base_k, Rule rule,
                                        const OracleOptions& options) {
  if (rule == Rule::kLadiesFirst) {
    fail(ErrorCode::kUnsupported, "periodicity needs a rule with a token");
  }
  PeriodicityCertificate c;
  c.constants = periodicity_constants(g);
  c.rule = rule;
  c.base_k = base_k;
  c.start = g.start();
  for (int k = 0; k <= base_k; ++k) {
    c.base.push_back(std::make_shared<const OutcomeTable>(solve_chip_states(g, k, rule, options)));
  }
  const int dm = static_cast<int>(c.constants.m);
  const int db = static_cast<int>(c.constants.m_bar);
  // Largest total whose shift is still inside the base and disagrees.
  int last_bad = -1;
  for (int k = 0; k + dm + db <= base_k; ++k) {
    for (int a = 0; a <= k; ++a) {
      for (Holder h : {Holder::kAlice, Holder::kBob}) {
        bool here = c.base_outcome(a, k - a, h) == StateOutcome::kAliceWin;
        bool there = c.base_outcome(a + dm, k - a + db, h) == StateOutcome::kAliceWin;
        if (here != there) last_bad = k;
      }
    }
  }
  c.offset = last_bad + 1;
  if (c.offset + dm + db > base_k || dm + db == 0) c.offset = base_k + 1;
  return c;
}

std::string_view to_string(Extension e) {
  switch (e) {
    case Extension::kAliceWin: return "alice";
    case Extension::kNotWin: return "not_alice";
    case Extension::kUncertified: return "uncertified";
  }
  return "?";
}

Extension extend_periodic(const PeriodicityCertificate& cert, ChipHolding alice, int bob) {
  Holder h;
  if (cert.rule == Rule::kMakeItTakeIt) {
    h = alice.marker == Marker::kMinusEps ? Holder::kAlice : Holder::kBob;
  } else {
    h = alice.marker == Marker::kStar ? Holder::kAlice : Holder::kBob;
  }
  std::int64_t a = alice.amount;
  std::int64_t b = bob;
  const std::int64_t dm = cert.constants.m;
  const std::int64_t db = cert.constants.m_bar;
  while (a + b > cert.base_k) {
    if (a < dm || b < db || dm + db == 0 || a - dm + b - db < cert.offset) {
      return Extension::kUncertified;
    }
    a -= dm;
    b -= db;
  }
  return cert.base_outcome(static_cast<int>(a), static_cast<int>(b), h) == StateOutcome::kAliceWin
             ? Extension::kAliceWin
             : Extension::kNotWin;
}

namespace {

std::vector<VertexId> richman_best(const GameGraph& g, const RichmanProfile& p, VertexId v,
                                   Side side) {
  std::vector<VertexId> out;
  auto moves = g.moves(side, v);
  if (moves.empty()) return out;
  Rational best = p.R[moves[0]];
  for (VertexId w : moves) {
    best = side == Side::kAlice ? std::min(best, p.R[w]) : std::max(best, p.R[w]);
  }
  for (VertexId w : moves) {
    if (p.R[w] == best) out.push_back(w);
  }
  return out;
}

bool intersects(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  for (VertexId x : a) {
    if (std::find(b.begin(), b.end(), x) != b.end()) return true;
  }
  return false;
}

}  // namespace

StabilityReport is_stable(const GameGraph& g, std::span<const ThresholdValue> f,
                          const RichmanProfile& profile) {
  StabilityReport rep;
  std::vector<std::uint8_t> seen(g.size(), 0);
  std::deque<VertexId> queue{g.start()};
  seen[g.start()] = 1;
  while (!queue.empty()) {
    VertexId v = queue.front();
    queue.pop_front();
    if (g.is_terminal(v)) continue;
    for (Side side : {Side::kAlice, Side::kBob}) {
      MoveChoice c = best_moves(g, f, v, side);
      if (c.argbest.empty()) continue;
      if (!intersects(c.argbest, richman_best(g, profile, v, side))) {
        if (rep.stable) {
          rep.stable = false;
          rep.witness = v;
          rep.witness_side = side;
        }
        if (v == g.start()) rep.root_stable = false;
      }
      for (VertexId w : c.argbest) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
  }
  return rep;
}

StabilityReport is_stable(const GameGraph& g, int k, Rule rule) {
  auto f = threshold_bounded(g, k, rule);
  return is_stable(g, f, richman_bounded(g));
}

std::string_view to_string(Order o) {
  switch (o) {
    case Order::kEquivalent: return "equivalent";
    case Order::kLess: return "less";
    case Order::kGreater: return "greater";
    case Order::kIncomparable: return "incomparable";
  }
  return "?";
}

std::optional<int> threshold_period_start(const std::vector<ThresholdValue>& f,
                                          const PeriodicityConstants& c) {
  const int n = static_cast<int>(f.size());
  const int M = static_cast<int>(c.M);
  if (n < 2 * M) return std::nullopt;
  int start = 0;
  for (int k = 0; k + M < n; ++k) {
    if (f[k + M].rank() != f[k].rank() + 2 * c.m) start = k + 1;
  }
  // The periodic stretch must cover at least one full period of residues.
  if (start + 2 * M > n) return std::nullopt;
  return start;
}

Comparison compare_games(const GameGraph& g, const GameGraph& h, int k_max, Rule rule) {
  if (k_max < 0) fail(ErrorCode::kInvalidArgument, "k_max must be >= 0");
  std::vector<ThresholdValue> fg, fh;
  for (int k = 0; k <= k_max; ++k) {
    fg.push_back(threshold_bounded(g, k, rule)[g.start()]);
    fh.push_back(threshold_bounded(h, k, rule)[h.start()]);
  }
  Comparison out;
  for (int k = 0; k <= k_max; ++k) {
    if (fg[k] < fh[k] && !out.witness_less) out.witness_less = k;
    if (fg[k] > fh[k] && !out.witness_greater) out.witness_greater = k;
  }
  PeriodicityConstants cg = periodicity_constants(g);
  PeriodicityConstants ch = periodicity_constants(h);
  out.period = std::lcm(cg.M, ch.M);
  auto sg = threshold_period_start(fg, cg);
  auto sh = threshold_period_start(fh, ch);
  if (sg && sh) {
    out.stable_from = std::max(*sg, *sh);
    const std::int64_t window_end = out.stable_from + out.period;
    if (window_end <= k_max + 1) {
      out.certified = true;
      // Rank drift of f(G) - f(G') per period in the periodic regime.
      const std::int64_t drift =
          2 * (out.period / cg.M * cg.m - out.period / ch.M * ch.m);
      for (std::int64_t k = out.stable_from; k < window_end && drift != 0; ++k) {
        std::int64_t diff = fg[k].rank() - fh[k].rank();
        if (drift < 0 && !out.witness_less) {
          std::int64_t steps = diff >= 0 ? diff / -drift + 1 : 0;
          out.witness_less = static_cast<int>(k + steps * out.period);
        }
        if (drift > 0 && !out.witness_greater) {
          std::int64_t steps = diff <= 0 ? -diff / drift + 1 : 0;
          out.witness_greater = static_cast<int>(k + steps * out.period);
        }
      }
    }
  }
  if (out.witness_less && out.witness_greater) {
    out.order = Order::kIncomparable;
  } else if (out.witness_less) {
    out.order = Order::kLess;
  } else if (out.witness_greater) {
    out.order = Order::kGreater;
  }
  return out;
}

std::string threshold_text(const ThresholdValue& f, int k) {
  return f.is_never() ? std::to_string(k + 1) : f.to_string();
}

std::string render_period_table(const PeriodTable& t, int columns) {
  std::ostringstream os;
  if (!t.name.empty()) os << "# " << t.name << "\n";
  os << "# f(" << t.M << "n+r) = " << t.m << "n+entry\n";
  os << t.M << "n+ |";
  for (int c = 0; c < columns; ++c) os << " +" << c;
  os << "\n";
  for (std::size_t r = 0; r < t.entries.size(); r += columns) {
    os << r << "+ |";
    for (std::size_t c = r; c < std::min(t.entries.size(), r + columns); ++c) {
      os << " " << t.entries[c];
    }
    os << "\n";
  }
  return os.str();
}

PeriodTable parse_period_table(std::string_view text) {
  PeriodTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.rfind("# f(", 0) == 0) {
        long long M = 0, m = 0;
        if (std::sscanf(line.c_str(), "# f(%lldn+r) = %lldn+entry", &M, &m) == 2) {
          t.M = M;
          t.m = m;
        }
      } else if (t.name.empty()) {
        t.name = line.substr(line.find_first_not_of("# "));
      }
      continue;
    }
    auto bar = line.find('|');
    if (bar == std::string::npos) fail(ErrorCode::kParse, "period table row without '|'");
    if (!header) {
      header = true;
      continue;
    }
    std::istringstream row(line.substr(bar + 1));
    std::string cell;
    while (row >> cell) t.entries.push_back(cell);
  }
  if (t.entries.size() != static_cast<std::size_t>(t.M)) {
    fail(ErrorCode::kParse, "period table has " + std::to_string(t.entries.size()) +
                                " entries, expected " + std::to_string(t.M));
  }
  return t;
}

std::vector<PeriodTable> parse_period_tables(std::string_view text) {
  std::vector<PeriodTable> out;
  std::istringstream in{std::string(text)};
  std::string line, block;
  auto flush = [&] {
    if (block.find('|') != std::string::npos) out.push_back(parse_period_table(block));
    block.clear();
  };
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) {
      flush();
    } else {
      block += line + "\n";
    }
  }
  flush();
  return out;
}

PeriodTable period_table(const GameGraph& g, const std::string& name, Rule rule) {
  PeriodicityConstants c = periodicity_constants(g);
  PeriodTable t;
  t.name = name;
  t.M = c.M;
  t.m = c.m;
  for (int k = 0; k < c.M; ++k) {
    t.entries.push_back(threshold_text(threshold_bounded(g, k, rule)[g.start()], k));
  }
  return t;
}

namespace {

// Expected entry at k from a period table.
std::string extend_entry(const PeriodTable& t, int k) {
  std::int64_t n = k / t.M;
  const std::string& e = t.entries[k % t.M];
  bool star = !e.empty() && e.back() == '*';
  std::int64_t base = std::stoll(star ? e.substr(0, e.size() - 1) : e);
  return std::to_string(base + n * t.m) + (star ? "*" : "");
}

}  // namespace

TTTStudy ttt_study(int k_min, int k_max, int jobs, const std::vector<PeriodTable>& references) {
  if (k_min < 0 || k_max < k_min) fail(ErrorCode::kInvalidArgument, "bad k range");
  TTTStudy s;
  TTTGame game = build_ttt_game();
  GameGraph center = build_ttt(std::vector<int>{kCenterCell});
  GameGraph corner = build_ttt(std::vector<int>{kCornerCell});

  s.R = richman_bounded(game.graph).at_start(game.graph);
  s.R_center = richman_bounded(center).at_start(center);
  s.R_corner = richman_bounded(corner).at_start(corner);
  s.unrestricted = periodicity_constants(game.graph);
  s.center = periodicity_constants(center);
  s.corner = periodicity_constants(corner);

  const int table_hi = std::max<int>({k_max, static_cast<int>(s.center.M) - 1,
                                      static_cast<int>(s.corner.M) - 1, 255});
  ThresholdTable full = threshold_table(game.graph, 0, table_hi, Rule::kStandard, jobs);
  ThresholdTable tc = threshold_table(center, 0, table_hi, Rule::kStandard, jobs);
  ThresholdTable tr = threshold_table(corner, 0, table_hi, Rule::kStandard, jobs);

  GameGraph edge = build_ttt(std::vector<int>{kEdgeCell});
  ThresholdTable te = threshold_table(edge, k_min, k_max, Rule::kStandard, jobs);
  const VertexId root = game.graph.start();
  for (int k = k_min; k <= k_max; ++k) {
    // A first move is optimal when restricting Alice to it leaves the
    // threshold unchanged.
    const ThresholdValue& f = full.values[k][root];
    FirstMoveReport row;
    row.k = k;
    row.f = threshold_text(f, k);
    row.f_center = threshold_text(tc.values[k][center.start()], k);
    row.f_corner = threshold_text(tr.values[k][corner.start()], k);
    row.center_optimal = tc.values[k][center.start()] == f;
    row.corner_optimal = tr.values[k][corner.start()] == f;
    row.edge_optimal = te.values[k - k_min][edge.start()] == f;
    s.rows.push_back(row);
  }

  auto layout = [&](const ThresholdTable& t, const GameGraph& g, const PeriodicityConstants& c,
                    const std::string& name) {
    PeriodTable p;
    p.name = name;
    p.M = c.M;
    p.m = c.m;
    for (int k = 0; k < c.M; ++k) p.entries.push_back(threshold_text(t.values[k][g.start()], k));
    return p;
  };
  s.center_table = layout(tc, center, s.center, "first move in the center");
  s.corner_table = layout(tr, corner, s.corner, "first move in the corner");

  const GameGraph A = build_primitive({PrimitiveKind::kA});
  const GameGraph B = build_primitive({PrimitiveKind::kB});
  const GameGraph E = build_primitive({PrimitiveKind::kE});
  const GameGraph A2 = build_primitive({PrimitiveKind::kAPow, 2});
  const GameGraph B2 = build_primitive({PrimitiveKind::kBPow, 2});
  const GameGraph B3 = build_primitive({PrimitiveKind::kBPow, 3});
  const GameGraph AB2 = wedge(A, B2);
  s.abstract_tables = {
      period_table(E, "E"),
      period_table(A2, "A^2"),
      period_table(B2, "B^2"),
      period_table(B3, "B^3"),
      period_table(AB2, "A^B^2"),
      period_table(wedge(AB2, B), "(A^B^2)^B"),
      period_table(wedge(AB2, B2), "(A^B^2)^B^2"),
      period_table(wedge(AB2, B3), "(A^B^2)^B^3"),
  };

  for (const PeriodTable& ref : references) {
    PositionMatch pm;
    pm.name = ref.name;
    pm.mismatches = 256 + 1;
    for (std::size_t v = 0; v < game.graph.size(); ++v) {
      auto id = static_cast<VertexId>(v);
      if (game.graph.is_terminal(id)) continue;
      int bad = 0;
      for (int k = 0; k <= 255 && bad < pm.mismatches; ++k) {
        if (threshold_text(full.values[k][id], k) != extend_entry(ref, k)) ++bad;
      }
      if (bad < pm.mismatches) {
        pm.mismatches = bad;
        pm.closest = game.boards[v].to_string();
      }
    }
    if (pm.mismatches == 0) pm.board = pm.closest;
    s.positions.push_back(pm);
  }
  return s;
}

}  // namespace bidding
