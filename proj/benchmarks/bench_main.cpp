#include <benchmark/benchmark.h>

#include "ghc/census.hpp"
#include "ghc/experiments.hpp"
#include "ghc/orbit.hpp"

using namespace ghc;

namespace {

const CertifiedMarking& s2() {
  static const CertifiedMarking cm = certify(fixture_s2());
  return cm;
}

void BM_MoebiusMultiply(benchmark::State& state) {
  Mat2 x = s2().marking.letter_matrix(0), y = s2().marking.letter_matrix(2);
  for (auto _ : state) {
    x = x * y;
    x = renormalize(x);
    benchmark::DoNotOptimize(x);
  }
}
BENCHMARK(BM_MoebiusMultiply);

void BM_Classify(benchmark::State& state) {
  Moebius g = Moebius::from_unimodular(evaluate(s2().marking, parse_word("abAAb")));
  for (auto _ : state) benchmark::DoNotOptimize(hyperbolic_data(g));
}
BENCHMARK(BM_Classify);

void BM_Census(benchmark::State& state) {
  CensusOptions opts;
  opts.threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(build_census(s2(), double(state.range(0)), opts));
}
BENCHMARK(BM_Census)->Arg(16)->Arg(20)->Arg(24)->Unit(benchmark::kMillisecond);

void BM_OrbitBall(benchmark::State& state) {
  BallOptions opts;
  opts.threads = 1;
  opts.keep_words = false;
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_ball(s2(), kOrigin, double(state.range(0)), opts));
}
BENCHMARK(BM_OrbitBall)->Arg(14)->Arg(18)->Arg(22)->Unit(benchmark::kMillisecond);

void BM_BoxContext(benchmark::State& state) {
  FlowBox box{hyperbolic_data(s2().marking.generators[0]).conjugator, 0.05};
  for (auto _ : state) benchmark::DoNotOptimize(box_context(s2(), box, double(state.range(0)), 1));
}
BENCHMARK(BM_BoxContext)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
