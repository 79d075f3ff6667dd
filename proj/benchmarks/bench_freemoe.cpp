// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

#include "freemoe/channels.hpp"
#include "freemoe/entropy.hpp"
#include "freemoe/sampling.hpp"
#include "freemoe/specnorm.hpp"

using namespace freemoe;

namespace {

template <class S>
AlgebraElement<S> generator_sum(unsigned n) {
  AlgebraElement<S> f(1);
  for (unsigned i = 1; i <= n; ++i) {
    f.add_term(WordTuple{Word::generator(i)}, ScalarTraits<S>::one());
  }
  return f;
}

template <class S>
void BM_Convolve(benchmark::State& state) {
  Rng rng(1);
  const std::size_t support = static_cast<std::size_t>(state.range(0));
  const auto f = random_graded_element<S>(rng, {4, 4}, support, 4);
  const auto g = random_graded_element<S>(rng, {4, 4}, support, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(convolve(f, g));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * f.size() * g.size()));
}
BENCHMARK(BM_Convolve<Complex>)->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(BM_Convolve<ComplexRational>)->Arg(16)->Arg(64)->Arg(256);

template <class S>
void BM_MomentLower(benchmark::State& state) {
  const auto f = generator_sum<S>(static_cast<unsigned>(state.range(0)));
  MomentOptions options;
  options.schedule = {1, 2, 4, 8};
  for (auto _ : state) {
    benchmark::DoNotOptimize(moment_lower(f, options));
  }
}
BENCHMARK(BM_MomentLower<Complex>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_MomentLower<ComplexRational>)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_ComplementaryOutput(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const unsigned k = static_cast<unsigned>(state.range(1));
  Rng rng(2);
  const PureState xi = random_state(rng, k, 20, 3, n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(complementary_entropy(n, k, xi));
  }
}
BENCHMARK(BM_ComplementaryOutput)->Args({2, 1})->Args({4, 2})->Args({8, 2});

void BM_DirectSpectrum(benchmark::State& state) {
  const unsigned n = static_cast<unsigned>(state.range(0));
  const std::vector<ChannelSpec> chain{{n, Side::left, 1}, {n, Side::right, 1}};
  const PureState xi = PureState::delta(WordTuple(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(direct_output_spectrum(chain, xi));
  }
}
BENCHMARK(BM_DirectSpectrum)->Arg(4)->Arg(8)->Arg(16);

void BM_Minimize(benchmark::State& state) {
  OptimizerConfig config;
  config.restarts = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(minimize_entropy(2, 1, static_cast<unsigned>(state.range(0)), config));
  }
}
BENCHMARK(BM_Minimize)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
