#pragma once

#include <string>
#include <string_view>

#include "bidding/analysis.hpp"
#include "bidding/oracle.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"

namespace bidding {

enum class Format : std::uint8_t { kText, kCsv, kJson, kPaperTable };
Format parse_format(std::string_view text);

// Output is deterministic: vertices in id order, k ascending.

std::string format_richman(const GameGraph& g, const RichmanProfile& p, bool all_vertices,
                           Format format);

// f at `v` for every k of the table. paper-table needs the table to start
// at k = 0 and the game's periodicity constants.
std::string format_thresholds(const GameGraph& g, const ThresholdTable& t, VertexId v,
                              Format format, const PeriodicityConstants* constants = nullptr);

std::string format_outcomes(const GameGraph& g, const OutcomeTable& t, bool all_vertices,
                            Format format);

std::string format_comparison(const Comparison& c, Format format);

std::string format_study(const TTTStudy& s, Format format);

std::string format_error(std::string_view code, std::string_view message, Format format);

}  // namespace bidding
