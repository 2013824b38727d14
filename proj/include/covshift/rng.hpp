#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace covshift {

/// Counter-based 64-bit generator: the i-th output is the SplitMix64 finalizer
/// applied to seed + i * 0x9E3779B97F4A7C15. The stream depends only on the
/// seed, and every distribution below is implemented here so draws match
/// across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) noexcept : seed_(seed), counter_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on [0, 1) with 53 random bits.
  double uniform() noexcept;
  /// Uniform on (0, 1).
  double uniform_open() noexcept;
  /// Uniform integer in [0, n), rejection-sampled to remove modulo bias.
  std::uint64_t below(std::uint64_t n) noexcept;
  double normal() noexcept;
  double normal(double mean, double sd) noexcept { return mean + sd * normal(); }
  /// Gamma(shape, 1), Marsaglia-Tsang.
  double gamma(double shape);
  double beta(double a, double b);

  /// Independent generator for sub-stream `index` (per permutation, per trial).
  Rng derive(std::uint64_t index) const noexcept;

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

std::uint64_t mix64(std::uint64_t z) noexcept;

/// Fisher-Yates shuffle driven by Rng::below.
template <typename T>
void shuffle(std::span<T> items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng.below(i));
    std::swap(items[i - 1], items[j]);
  }
}

/// k distinct indices from [0, n) in draw order (partial Fisher-Yates).
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace covshift
