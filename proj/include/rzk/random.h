// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace rzk {

/// Seeded xoshiro256** generator. The sequence depends only on the seed, so
/// every experiment is reproducible across platforms and standard libraries.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  std::uint64_t operator()() { return next(); }
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  /// Unbiased integer in [0, n). Requires n > 0.
  std::uint64_t uniform_below(std::uint64_t n);
  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();
  bool coin() { return (next() >> 63) != 0; }
  /// Standard normal deviate.
  double normal();

  /// Independent child stream keyed by (seed, index); does not advance this
  /// generator, so trial i sees the same stream however trials are ordered.
  Rng split(std::uint64_t index) const;

  std::uint64_t seed() const { return seed_; }

  template <class It>
  void shuffle(It first, It last) {
    for (auto i = static_cast<std::uint64_t>(last - first); i > 1; --i) {
      std::swap(first[i - 1], first[uniform_below(i)]);
    }
  }
  template <class T>
  void shuffle(std::vector<T>& items) {
    shuffle(items.begin(), items.end());
  }

 private:
  std::uint64_t seed_;
  std::uint64_t s_[4];
};

/// The SplitMix64 finalizer, used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace rzk
