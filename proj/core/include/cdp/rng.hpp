#pragma once

#include <cstdint>
#include <string_view>

namespace cdp {

/// Deterministic 64-bit generator (splitmix64). Used instead of the standard
/// distributions so that simulation results are identical on every platform.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// FNV-1a hash of a string, for deriving per-entity RNG streams.
inline std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

/// Derives an independent stream seed from a run seed and an entity id.
/// The same (seed, id) always yields the same stream, so two policies run
/// on the same scenario consume identical per-device random sequences.
inline std::uint64_t stream_seed(std::uint64_t seed, std::string_view id) {
  SplitMix64 mix(seed ^ fnv1a(id));
  return mix.next();
}

}  // namespace cdp
