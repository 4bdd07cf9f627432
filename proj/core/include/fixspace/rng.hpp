#pragma once

#include <cstdint>
#include <random>

namespace fixspace {

// Deterministic random stream. Worker streams are forked from a master seed
// by stream id, so results depend only on (seed, id), never on scheduling.
class SeedStream {
public:
  explicit SeedStream(std::uint64_t seed = 0) : engine_(mix(seed)) {}

  static SeedStream fork(std::uint64_t master, std::uint64_t stream_id) {
    return SeedStream(mix(master ^ mix(stream_id + 0x9e3779b97f4a7c15ULL)));
  }

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, bound). Rejection sampling keeps the result
  // independent of the standard library's distribution implementation.
  std::uint64_t below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound) - 1;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x > limit);
    return x % bound;
  }

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

private:
  std::mt19937_64 engine_;
};

} // namespace fixspace
