#pragma once

#include <cstdint>
#include <random>

namespace mechlab {

/// splitmix64 step; used to derive independent per-trial seeds.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t s = seed + 0x632be59bd9b4e019ULL * (stream + 1);
  std::uint64_t a = splitmix64(s);
  return splitmix64(s) ^ a;
}

/// mt19937_64 with hand-rolled distributions. The standard pins the engine's
/// output bit-exactly but not the library distributions, so uniform draws
/// are derived here to keep seeded results reproducible across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t bits() { return engine_(); }

  /// Uniform in [0, 1) with 53-bit resolution.
  double uniform01() {
    return static_cast<double>(bits() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) {
    return lo + (hi - lo) * uniform01();
  }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(bits() % span);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mechlab
