#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace clawbreak {

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace detail

/// Deterministic random source: a mt19937_64 engine seeded through splitmix64.
///
/// All draws go through explicit integer/bit arithmetic (never through
/// std::uniform_*_distribution, whose output is implementation-defined), so a
/// given seed reproduces bit-identical sequences on any platform. Independent
/// substreams come from stream(), which mixes the base seed with a stream id;
/// parallel per-trial streams therefore reproduce serial results.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(mix(seed, 0x243f6a8885a308d3ULL)) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased draw from [0, n) via rejection sampling. n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = n * ((~std::uint64_t{0}) / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform double in [0, 1) with 53 random mantissa bits.
  double unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Fisher-Yates shuffle.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[static_cast<std::size_t>(below(i))]);
    }
  }

  /// Independent substream identified by id.
  Rng stream(std::uint64_t id) const { return Rng(mix(seed_, id)); }

  std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
    std::uint64_t s = a ^ (b * 0x9e3779b97f4a7c15ULL + 0x7f4a7c15ULL);
    std::uint64_t x = detail::splitmix64(s);
    return x ^ detail::splitmix64(s);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace clawbreak
