#pragma once

#include <array>
#include <cstdint>

namespace qcl {

/// SplitMix64 finalizer; used to derive stream keys.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Deterministic xoshiro256** stream. A stream is identified by a 64-bit key;
/// substream(i) derives an independent child keyed by (key, i), so sample i of
/// a batch draws from the same numbers no matter which worker runs it.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : key_(splitmix64(seed)) { reseed(); }

  RngStream substream(std::uint64_t index) const {
    return RngStream(Key{splitmix64(key_ ^ splitmix64(index + 0x632be59bd9b4e019ULL))});
  }

  std::uint64_t key() const { return key_; }

  std::uint64_t next() {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit RngStream(Key k) : key_(k.value) { reseed(); }

  void reseed() {
    std::uint64_t x = key_;
    for (auto& s : s_) {
      x += 0x9e3779b97f4a7c15ULL;
      s = splitmix64(x);
    }
  }

  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t key_;
  std::array<std::uint64_t, 4> s_{};
};

}  // namespace qcl
