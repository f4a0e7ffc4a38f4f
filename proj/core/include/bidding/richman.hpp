#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bidding/error.hpp"
#include "bidding/game_graph.hpp"
#include "bidding/rational.hpp"

namespace bidding {

// Real-valued bidding thresholds per vertex. R is the fraction of the total
// bidding resources above which Alice wins. At a vertex where only one player
// has moves, R_A and R_B both equal that player's best value (the next mover
// is forced, so nobody bids). A vertex with no moves and no label counts as a
// non-win for Alice.
struct RichmanProfile {
  std::vector<Rational> R;
  std::vector<Rational> R_A;
  std::vector<Rational> R_B;
  std::vector<Rational> delta;  // |R_B - R_A| / 2, the optimal real bid
  std::vector<bool> zugzwang;   // R_B < R_A
  std::optional<std::vector<Rational>> P;  // random-turn win probability

  Rational at_start(const GameGraph& g) const { return R[g.start()]; }
};

struct RichmanOptions {
  double tolerance = 1e-12;
  std::int64_t max_denominator = 1'000'000;
  std::int64_t max_iterations = 50'000'000;
};

// Backward induction with exact rationals. Rejects cyclic graphs.
RichmanProfile richman_bounded(const GameGraph& g);

// Value iteration from R = 1 on non-terminals, then rational reconstruction
// and exact verification of the fixed-point equations.
RichmanProfile richman_finite(const GameGraph& g, const RichmanOptions& options = {});

// richman_bounded when possible, richman_finite otherwise.
RichmanProfile richman(const GameGraph& g, const RichmanOptions& options = {});

// Fair-coin random-turn play: Alice maximizes, Bob minimizes the probability
// that Alice reaches one of her winning terminals.
std::vector<Rational> random_turn_value(const GameGraph& g);

// iterates[t][v] is the exact value-iteration iterate after t steps, which is
// R(G_v[t]) for the truncation of G at v after t moves.
std::vector<std::vector<Rational>> value_iterates(const GameGraph& g, int steps);

// Thrown by richman_finite when the reconstructed rationals fail the exact
// fixed-point check; carries the floating-point profile.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& message, std::vector<double> profile)
      : Error(ErrorCode::kReconstructionFailed, message),
        float_profile_(std::move(profile)) {}
  const std::vector<double>& float_profile() const { return float_profile_; }

 private:
  std::vector<double> float_profile_;
};

}  // namespace bidding
