#pragma once

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace dagbench {

/// Finalizer stage of SplitMix64 (Steele, Lea, Flood; JDK 8 SplittableRandom).
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Deterministic pseudo-random generator.
///
/// The algorithm is pinned so that seeds reproduce across builds and
/// platforms: the stream is SplitMix64 (state += golden gamma, output =
/// murmur-style finalizer), bounded draws use rejection sampling to remove
/// modulo bias, and shuffles are Fisher-Yates driven by `below`. None of the
/// implementation-defined std <random> distributions are used anywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : state_(seed) {}

  /// Independent substream addressed by (base_seed, stream id list).
  static Rng derive(std::uint64_t base_seed, std::initializer_list<std::uint64_t> streams) {
    std::uint64_t h = mix64(base_seed ^ 0x8f1bbcdcbfa53e0bULL);
    for (std::uint64_t s : streams) h = mix64(h ^ mix64(s ^ 0xd6e8feb86659fd93ULL));
    return Rng(h);
  }

  std::uint64_t next_u64() { return mix64(state_ += 0x9e3779b97f4a7c15ULL); }

  /// Uniform in [0, bound); bound must be nonzero.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
    for (;;) {
      const std::uint64_t r = next_u64();
      if (r >= threshold) return r % bound;
    }
  }

  /// Uniform integer in the inclusive range [lo, hi].
  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool coin() { return (next_u64() & 1u) != 0; }

  template <class T>
  const T& pick(const std::vector<T>& pool) {
    return pool[below(pool.size())];
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
};

}  // namespace dagbench
