#include <vector>

#include <benchmark/benchmark.h>

#include "tourney/best_play.hpp"
#include "tourney/codec.hpp"

namespace {

using namespace tourney;

void BM_EncodeHistory(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto m = static_cast<std::size_t>(state.range(1));
  Rng rng(1);
  std::vector<Choice> digits(m);
  for (auto& d : digits) d = static_cast<Choice>(rng.below(q));
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec::encode_history(digits, q));
  }
}
BENCHMARK(BM_EncodeHistory)->Args({2, 3})->Args({2, 16})->Args({11, 5});

void BM_DecodeIndex(benchmark::State& state) {
  const auto q = static_cast<std::uint32_t>(state.range(0));
  const auto m = static_cast<std::uint32_t>(state.range(1));
  const auto len = codec::table_length(q, m);
  std::uint64_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(codec::decode_index(i, q, m));
    i = (i + 7919) % len;
  }
}
BENCHMARK(BM_DecodeIndex)->Args({2, 10})->Args({11, 5});

void BM_BestPlayStep(benchmark::State& state) {
  const auto memory = static_cast<std::uint32_t>(state.range(0));
  Rng rng(2);
  auto bp = best_play_init(memory, 2, 2, rng);
  for (auto _ : state) {
    const auto c = best_play_choice(bp, rng);
    best_play_observe(bp, c ^ 1u);
  }
}
BENCHMARK(BM_BestPlayStep)->Arg(3)->Arg(5)->Arg(12);

}  // namespace
