#include <benchmark/benchmark.h>

#include "bidding/builders.hpp"
#include "bidding/oracle.hpp"
#include "bidding/richman.hpp"
#include "bidding/threshold.hpp"
#include "bidding/ttt.hpp"

namespace {

using namespace bidding;

void BM_RichmanTTT(benchmark::State& state) {
  GameGraph g = build_ttt();
  for (auto _ : state) benchmark::DoNotOptimize(richman_bounded(g));
}
BENCHMARK(BM_RichmanTTT)->Unit(benchmark::kMillisecond);

void BM_BuildTTT(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(build_ttt_game());
}
BENCHMARK(BM_BuildTTT)->Unit(benchmark::kMillisecond);

void BM_ThresholdTTT(benchmark::State& state) {
  GameGraph g = build_ttt(std::vector<int>{kCenterCell});
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(threshold_bounded(g, k, Rule::kStandard));
}
BENCHMARK(BM_ThresholdTTT)->Arg(8)->Arg(64)->Arg(255)->Unit(benchmark::kMicrosecond);

void BM_ThresholdTableTTT(benchmark::State& state) {
  GameGraph g = build_ttt(std::vector<int>{kCenterCell});
  for (auto _ : state) benchmark::DoNotOptimize(threshold_table(g, 0, 255, Rule::kStandard));
}
BENCHMARK(BM_ThresholdTableTTT)->Unit(benchmark::kMillisecond);

void BM_OracleTug(benchmark::State& state) {
  GameGraph g = build_tug(3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_chip_states(g, k, Rule::kStandard));
}
BENCHMARK(BM_OracleTug)->Arg(8)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_OracleUlt(benchmark::State& state) {
  GameGraph g = build_ult(3);
  const int k = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(solve_chip_states(g, k, Rule::kStandard));
}
BENCHMARK(BM_OracleUlt)->Arg(12)->Unit(benchmark::kMicrosecond);

void BM_RichmanFiniteTug(benchmark::State& state) {
  GameGraph g = build_tug(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(richman_finite(g));
}
BENCHMARK(BM_RichmanFiniteTug)->Arg(3)->Arg(10)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
