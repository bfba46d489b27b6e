#pragma once

#include <cstdint>

namespace renewal {

// 64-bit avalanche finalizer, used both for stream keying and for hashing
// schedule coordinates.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// xoshiro256++ keyed by (seed, replication, chain). Every replication owns
// its own substream, so results do not depend on how replications are
// scheduled across threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t replication, std::uint64_t chain) {
    std::uint64_t key = mix64(seed ^ 0x6a09e667f3bcc908ULL);
    key = mix64(key ^ mix64(replication));
    key = mix64(key ^ mix64(chain ^ 0xbb67ae8584caa73bULL));
    SplitMix64 sm(key);
    for (auto& w : state_) w = sm.next();
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // uniform on [0, 1) with 53-bit resolution
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
};

// Deterministic hash of (seed, t, i) into [0, 1).
inline double hash_to_unit(std::uint64_t seed, std::int64_t t, std::int64_t i) {
  std::uint64_t h = mix64(seed ^ 0x510e527fade682d1ULL);
  h = mix64(h ^ static_cast<std::uint64_t>(t));
  h = mix64(h ^ (static_cast<std::uint64_t>(i) + 0x9b05688c2b3e6c1fULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace renewal
