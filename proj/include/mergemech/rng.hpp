#pragma once

#include <cstdint>

namespace mergemech {

/// Small deterministic PRNG (splitmix64). One instance per worker/stream;
/// never shared. Chosen over std engines for cheap copies and a portable,
/// compiler-independent stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1).
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Independent substream derived from a root seed and a stream id.
  static Rng substream(std::uint64_t root_seed, std::uint64_t stream_id) {
    Rng mixer(root_seed ^ (0x94d049bb133111ebULL * (stream_id + 1)));
    return Rng(mixer.next_u64());
  }

 private:
  std::uint64_t state_;
};

}  // namespace mergemech
