#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace tourney {

// splitmix64 finalizer. Used to derive independent child seeds from a parent
// seed and a stream key; not used as a generator on its own.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t key) noexcept;

// Deterministic generator shared by every random decision in a tournament.
//
// std::mt19937_64's output sequence is fixed by the standard, but the standard
// distributions are not, so bounded draws, real draws and shuffles are done
// here to keep records byte-identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  // Uniform in [0, 1) with 53 bits of resolution.
  double unit();

  // True with probability p. Always consumes exactly one draw.
  bool bernoulli(double p) { return unit() < p; }

  // Child generator keyed on this generator's seed, independent of how many
  // draws have been taken from the parent.
  Rng split(std::uint64_t key) const { return Rng(mix_seed(seed_, key)); }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const auto j = static_cast<std::size_t>(below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  // k distinct indices from [0, n), in draw order. Requires k <= n.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
};

}  // namespace tourney
