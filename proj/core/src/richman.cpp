#include "bidding/richman.hpp"

#include <algorithm>
#include <cmath>

namespace bidding {
namespace {

template <typename T>
struct VertexValues {
  T R, R_A, R_B;
};

// One application of the Richman equations at a non-terminal vertex.
template <typename T>
VertexValues<T> evaluate(const GameGraph& g, const std::vector<T>& R, VertexId v) {
  auto red = g.red_moves(v);
  auto blue = g.blue_moves(v);
  T ra{}, rb{};
  if (!red.empty()) {
    ra = R[red[0]];
    for (VertexId w : red) ra = std::min(ra, R[w]);
  }
  if (!blue.empty()) {
    rb = R[blue[0]];
    for (VertexId w : blue) rb = std::max(rb, R[w]);
  }
  if (red.empty()) return {rb, rb, rb};
  if (blue.empty()) return {ra, ra, ra};
  return {(ra + rb) / T(2), ra, rb};
}

template <typename T>
T terminal_value(Outcome o) {
  return o == Outcome::kAliceWin ? T(0) : T(1);
}

RichmanProfile make_profile(const GameGraph& g, const std::vector<Rational>& R) {
  RichmanProfile p;
  const std::size_t n = g.size();
  p.R = R;
  p.R_A.resize(n);
  p.R_B.resize(n);
  p.delta.resize(n);
  p.zugzwang.assign(n, false);
  for (std::size_t v = 0; v < n; ++v) {
    auto id = static_cast<VertexId>(v);
    if (g.is_terminal(id)) {
      p.R_A[v] = p.R_B[v] = R[v];
      continue;
    }
    auto vals = evaluate(g, R, id);
    p.R_A[v] = vals.R_A;
    p.R_B[v] = vals.R_B;
    p.delta[v] = abs(vals.R_B - vals.R_A) / 2;
    p.zugzwang[v] = vals.R_B < vals.R_A;
  }
  return p;
}

}  // namespace

RichmanProfile richman_bounded(const GameGraph& g) {
  if (!g.bounded()) {
    fail(ErrorCode::kUnsupported, "backward induction needs a bounded game; use richman_finite");
  }
  std::vector<Rational> R(g.size());
  for (VertexId v : g.successors_first()) {
    if (auto o = g.terminal(v)) {
      R[v] = terminal_value<Rational>(*o);
    } else {
      R[v] = evaluate(g, R, v).R;
    }
  }
  RichmanProfile p = make_profile(g, R);
  p.P = random_turn_value(g);
  return p;
}

RichmanProfile richman_finite(const GameGraph& g, const RichmanOptions& options) {
  const std::size_t n = g.size();
  std::vector<double> x(n, 1.0);
  for (std::size_t v = 0; v < n; ++v) {
    if (auto o = g.terminal(static_cast<VertexId>(v))) x[v] = terminal_value<double>(*o);
  }
  // Gauss-Seidel sweeps from above; monotone, so it settles on the same
  // limit as the truncation sequence.
  for (std::int64_t it = 0; it < options.max_iterations; ++it) {
    double change = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
      auto id = static_cast<VertexId>(v);
      if (g.is_terminal(id)) continue;
      double nv = evaluate(g, x, id).R;
      change = std::max(change, std::abs(nv - x[v]));
      x[v] = nv;
    }
    if (change < options.tolerance * 1e-3) break;
  }

  std::vector<Rational> R(n);
  for (double tol : {options.tolerance, options.tolerance * 1e2, options.tolerance * 1e4}) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      ok = best_rational_approximation(x[v], tol, options.max_denominator, R[v]);
    }
    for (std::size_t v = 0; v < n && ok; ++v) {
      auto id = static_cast<VertexId>(v);
      if (auto o = g.terminal(id)) {
        ok = R[v] == terminal_value<Rational>(*o);
      } else {
        ok = evaluate(g, R, id).R == R[v];
      }
    }
    if (ok) return make_profile(g, R);
  }
  throw ReconstructionError(
      "no rational fixed point with denominator <= " + std::to_string(options.max_denominator) +
          " matches the iteration; raise max_denominator",
      x);
}

RichmanProfile richman(const GameGraph& g, const RichmanOptions& options) {
  return g.bounded() ? richman_bounded(g) : richman_finite(g, options);
}

std::vector<Rational> random_turn_value(const GameGraph& g) {
  if (!g.bounded()) fail(ErrorCode::kUnsupported, "random-turn value needs a bounded game");
  std::vector<Rational> P(g.size());
  for (VertexId v : g.successors_first()) {
    if (auto o = g.terminal(v)) {
      P[v] = *o == Outcome::kAliceWin ? 1 : 0;
      continue;
    }
    auto red = g.red_moves(v);
    auto blue = g.blue_moves(v);
    Rational pa, pb;
    if (!red.empty()) {
      pa = P[red[0]];
      for (VertexId w : red) pa = std::max(pa, P[w]);
    }
    if (!blue.empty()) {
      pb = P[blue[0]];
      for (VertexId w : blue) pb = std::min(pb, P[w]);
    }
    if (red.empty()) P[v] = pb;
    else if (blue.empty()) P[v] = pa;
    else P[v] = (pa + pb) / 2;
  }
  return P;
}

std::vector<std::vector<Rational>> value_iterates(const GameGraph& g, int steps) {
  if (steps < 0) fail(ErrorCode::kInvalidArgument, "steps must be >= 0");
  const std::size_t n = g.size();
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> cur(n, Rational(1));
  for (std::size_t v = 0; v < n; ++v) {
    if (auto o = g.terminal(static_cast<VertexId>(v))) cur[v] = terminal_value<Rational>(*o);
  }
  out.push_back(cur);
  for (int t = 0; t < steps; ++t) {
    std::vector<Rational> next = cur;
    for (std::size_t v = 0; v < n; ++v) {
      auto id = static_cast<VertexId>(v);
      if (!g.is_terminal(id)) next[v] = evaluate(g, cur, id).R;
    }
    cur = std::move(next);
    out.push_back(cur);
  }
  return out;
}

}  // namespace bidding
