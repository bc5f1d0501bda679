#include "gwac/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace gwac {

uint32_t Rng::uniform_below(uint32_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  const uint64_t max64 = std::numeric_limits<uint64_t>::max();
  const uint64_t rem = (max64 % bound + 1) % bound;  // 2^64 mod bound
  uint64_t x = next_u64();
  if (rem != 0) {
    while (x > max64 - rem) x = next_u64();
  }
  return static_cast<uint32_t>(x % bound);
}

double Rng::normal() {
  // 1 - u keeps the logarithm away from zero.
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::truncated_normal(double mean, double sd, double lo, double hi) {
  for (;;) {
    const double x = mean + sd * normal();
    if (x > lo && x <= hi) return x;
  }
}

std::vector<int> Rng::sample_without_replacement(int n, int k) {
  if (k < 0 || k > n) throw std::invalid_argument("sample_without_replacement: k out of range");
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < k; ++i) {
    const int j = i + static_cast<int>(uniform_below(static_cast<uint32_t>(n - i)));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(k);
  std::sort(pool.begin(), pool.end());
  return pool;
}

}  // namespace gwac
