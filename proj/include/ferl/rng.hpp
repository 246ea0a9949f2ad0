#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

namespace ferl {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seeded RNG with fixed transforms so that results do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : base_(seed), gen_(splitmix64(seed)) {}

  /// Uniform double in [0, 1).
  double uniform() { return (gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no cached spare).
  double normal() {
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Uniform integer in [0, n).
  std::size_t uniform_index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n;
  }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[uniform_index(i)]);
    }
  }

  /// Derives an independent stream, e.g. one per experiment cell.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix64(base_ ^ splitmix64(stream + 0x51ed2701ULL)));
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::uint64_t base_;
  std::mt19937_64 gen_;
};

/// Deterministic per-cell seed for (master seed, cell index) pairs.
inline std::uint64_t cell_seed(std::uint64_t master, std::uint64_t cell) {
  return splitmix64(splitmix64(master) ^ (cell + 0x9e3779b9ULL));
}

}  // namespace ferl
