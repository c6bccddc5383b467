#pragma once

#include <cstdint>
#include <random>

namespace hyperrho {

// Deterministic sub-seed derivation (splitmix64 finalizer). Every check and
// worker cell derives its own stream from the master seed so results are
// independent of execution order.
inline std::uint64_t mix_seed(std::uint64_t master, std::uint64_t cell) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (cell + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform(double lo = 0.0, double hi = 1.0) {
    return std::uniform_real_distribution<double>(lo, hi)(eng_);
  }

  // Uniform index in [0, n).
  int index(int n) {
    return std::uniform_int_distribution<int>(0, n - 1)(eng_);
  }

  std::uint64_t next() { return eng_(); }

private:
  std::mt19937_64 eng_;
};

}  // namespace hyperrho
