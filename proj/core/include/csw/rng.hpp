#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace csw {

/// splitmix64 step; used for seeding and as a 64-bit finalizer.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// 64-bit keyed hash of a byte string. Stable across platforms and builds;
/// seeded streams derived from it are part of the reproducibility contract.
std::uint64_t hash64(std::uint64_t seed, std::string_view data);

/// Combine two 64-bit values into one (order-sensitive).
std::uint64_t mix64(std::uint64_t a, std::uint64_t b);

/// xoshiro256** generator. Deliberately hand-rolled instead of <random>
/// engines/distributions so that sampled manifests are identical across
/// standard libraries and compilers.
class Xoshiro256ss {
 public:
  explicit Xoshiro256ss(std::uint64_t seed);

  std::uint64_t next();

  /// Unbiased draw in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double unit();

 private:
  std::uint64_t s_[4];
};

/// k distinct indices drawn uniformly without replacement from [0, n),
/// returned in draw order. Partial Fisher-Yates; k <= n required.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        Xoshiro256ss& rng);

/// In-place Fisher-Yates shuffle.
template <typename T>
void shuffle(std::span<T> items, Xoshiro256ss& rng) {
  if (items.size() < 2) return;
  for (std::size_t i = items.size() - 1; i > 0; --i) {
    std::size_t j = rng.below(i + 1);
    std::swap(items[i], items[j]);
  }
}

}  // namespace csw
