#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bidding/oracle.hpp"
#include "bidding/rational.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"

namespace bidding {

// M is the least integer making M*R(G_v) and M*Delta_v integral at every
// vertex; m = M*R(G) and m_bar = M*R(reverse G) at the start.
struct PeriodicityConstants {
  std::int64_t M = 1;
  std::int64_t m = 0;
  std::int64_t m_bar = 0;
};

PeriodicityConstants periodicity_constants(const GameGraph& g,
                                           const RichmanOptions& options = {});

// Oracle-solved start outcomes for every split with a + b <= base_k, plus the
// empirically found offset from which shifting by (m, m_bar) keeps every
// Alice-win predicate unchanged inside the base window.
struct PeriodicityCertificate {
  PeriodicityConstants constants;
  Rule rule = Rule::kStandard;
  int base_k = 0;
  int offset = 0;  // base_k + 1 when no shift-invariant tail was observed
  std::vector<std::shared_ptr<const OutcomeTable>> base;  // index = chip total
  VertexId start = 0;

  StateOutcome base_outcome(int alice, int bob, Holder holder) const;
};

PeriodicityCertificate make_certificate(const GameGraph& g, int base_k,
                                        Rule rule = Rule::kStandard,
                                        const OracleOptions& options = {});

enum class Extension : std::uint8_t { kAliceWin, kNotWin, kUncertified };
std::string_view to_string(Extension e);

// Alice's holding carries the rule's token marker (star = Alice holds it).
Extension extend_periodic(const PeriodicityCertificate& cert, ChipHolding alice, int bob);

struct StabilityReport {
  bool root_stable = true;  // the start vertex alone
  bool stable = true;       // every vertex reached by threshold-optimal moves
  std::optional<VertexId> witness;  // first vertex where the two disagree
  std::optional<Side> witness_side;
};

// Compares the threshold-optimal moves with the Richman-optimal moves at the
// vertices reached by threshold-optimal play from the start.
StabilityReport is_stable(const GameGraph& g, int k, Rule rule = Rule::kStandard);
StabilityReport is_stable(const GameGraph& g, std::span<const ThresholdValue> f,
                          const RichmanProfile& profile);

enum class Order : std::uint8_t { kEquivalent, kLess, kGreater, kIncomparable };
std::string_view to_string(Order o);

struct Comparison {
  Order order = Order::kEquivalent;  // kLess means f(G) <= f(G') with some strict k
  bool certified = false;            // verdict holds for every k, not just k <= k_max
  std::optional<int> witness_less;     // f(G,k) < f(G',k)
  std::optional<int> witness_greater;  // f(G,k) > f(G',k)
  std::int64_t period = 1;
  int stable_from = 0;  // both tables periodic from here on
};

Comparison compare_games(const GameGraph& g, const GameGraph& h, int k_max,
                         Rule rule = Rule::kStandard);

// Least k0 such that f(k + M) = f(k) + m for every k in [k0, k_max - M];
// nullopt when fewer than two periods fit.
std::optional<int> threshold_period_start(const std::vector<ThresholdValue>& f_start,
                                          const PeriodicityConstants& c);

// Period layout of thresholds: f(G, M n + r) = m n + entries[r].
struct PeriodTable {
  std::string name;
  std::int64_t M = 1;
  std::int64_t m = 0;
  std::vector<std::string> entries;
};

// Entries render NeverWins as its magnitude k+1.
std::string threshold_text(const ThresholdValue& f, int k);

// "256n+ | +0 ... +11" header, then one row per 12 residues.
std::string render_period_table(const PeriodTable& t, int columns = 12);
// Parses the same layout back into entries.
PeriodTable parse_period_table(std::string_view text);
// Several tables separated by blank lines.
std::vector<PeriodTable> parse_period_tables(std::string_view text);

struct FirstMoveReport {
  int k = 0;
  std::string f;         // unrestricted
  std::string f_center;  // Alice's first move restricted to the center
  std::string f_corner;  // ... to a corner
  bool center_optimal = false;
  bool corner_optimal = false;
  bool edge_optimal = false;
};

struct PositionMatch {
  std::string name;
  std::optional<std::string> board;  // identified board, canonical form
  int mismatches = 0;                // for the closest board
  std::string closest;
};

struct TTTStudy {
  Rational R, R_center, R_corner;
  PeriodicityConstants center, corner, unrestricted;
  std::vector<FirstMoveReport> rows;  // k = k_min..k_max
  PeriodTable center_table, corner_table;
  std::vector<PeriodTable> abstract_tables;
  std::vector<PositionMatch> positions;
};

// f', f'' and f over [k_min, k_max], the first-move optimality sets, and the
// one-period tables. `references` are published per-position tables to
// identify among reachable boards (compared over k = 0..255).
TTTStudy ttt_study(int k_min, int k_max, int jobs = 1,
                   const std::vector<PeriodTable>& references = {});

// f over one period at the start of g, laid out as a PeriodTable.
PeriodTable period_table(const GameGraph& g, const std::string& name,
                         Rule rule = Rule::kStandard);

}  // namespace bidding
