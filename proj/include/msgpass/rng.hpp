#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

namespace msgpass {

// 64-bit finalizer (splitmix64). Used as the mixing core of every
// deterministic stream in the library so results are identical across
// platforms and standard-library implementations.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based splittable generator. A stream is identified by a seed plus
// up to two split labels; drawing from one stream never perturbs another,
// so adding sites or rounds does not shift anyone else's randomness.
class SplitRng {
 public:
  explicit SplitRng(std::uint64_t seed) : state_(mix64(seed ^ 0x6d6573736167ULL)) {}

  SplitRng split(std::uint64_t a, std::uint64_t b = 0) const {
    return SplitRng(mix64(state_ ^ mix64(a ^ 0x736974655fULL) ^ mix64(mix64(b) + 0x726f756e64ULL)));
  }

  std::uint64_t next_u64() { return mix64(state_ + (++counter_) * 0x9e3779b97f4a7c15ULL); }

  // Uniform in [0, bound). bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    // rejection sampling keeps the draw exactly uniform
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % bound;
  }

  // Uniform double in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Draws `count` distinct values from `ground` by a partial Fisher-Yates
  // shuffle; the result is sorted ascending.
  template <typename T>
  std::vector<T> sample_sorted(std::vector<T> ground, std::size_t count);

 private:
  std::uint64_t state_;
  std::uint64_t counter_ = 0;
};

template <typename T>
std::vector<T> SplitRng::sample_sorted(std::vector<T> ground, std::size_t count) {
  if (count > ground.size()) count = ground.size();
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(below(ground.size() - i));
    std::swap(ground[i], ground[j]);
  }
  ground.resize(count);
  std::sort(ground.begin(), ground.end());
  return ground;
}

}  // namespace msgpass
