#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

namespace gwac {

// splitmix64 step, used to derive independent seeds from (seed, tag...)
// tuples. The generator proper is std::mt19937_64, whose output sequence is
// fixed by the standard; the distribution helpers below are hand-rolled
// because standard-library distributions are not bit-portable.
inline uint64_t splitmix64(uint64_t& state) {
  uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline uint64_t mix_seed(std::initializer_list<uint64_t> parts) {
  uint64_t state = 0x6a09e667f3bcc908ULL;
  uint64_t out = 0;
  for (uint64_t p : parts) {
    state ^= p;
    out = splitmix64(state);
  }
  return out;
}

class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound) without modulo bias.
  uint32_t uniform_below(uint32_t bound);

  // Standard normal via Box-Muller (two uniforms per draw).
  double normal();

  // Normal(mean, sd) restricted by rejection to lo < x <= hi.
  double truncated_normal(double mean, double sd, double lo, double hi);

  // k distinct indices from [0, n), ascending.
  std::vector<int> sample_without_replacement(int n, int k);

 private:
  std::mt19937_64 engine_;
};

}  // namespace gwac
