// Small deterministic RNG. std::mt19937 distributions are not pinned down by
// the standard, so sampling is hand-rolled on top of splitmix64 to keep seeded
// runs reproducible across standard libraries.

#ifndef CONEVOL_RNG_HPP
#define CONEVOL_RNG_HPP

#include <cmath>
#include <cstdint>

#include <Eigen/Dense>

namespace conevol {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Derive an independent stream from a base seed and a stream tag.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  std::uint64_t s = seed ^ (0x2545f4914f6cdd1dULL * (tag + 1));
  splitmix64(s);
  return splitmix64(s);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {
    // burn a few outputs so nearby seeds decorrelate
    for (int i = 0; i < 4; ++i) splitmix64(state_);
  }

  std::uint64_t next_u64() { return splitmix64(state_); }

  /// Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Standard normal via Box-Muller (no cached spare, to stay stateless).
  double gaussian() {
    double u1 = uniform();
    while (u1 <= 1e-300) u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  /// Uniform direction on the unit sphere in R^n.
  Eigen::VectorXd unit_vector(int n) {
    Eigen::VectorXd v(n);
    double norm = 0.0;
    do {
      for (int i = 0; i < n; ++i) v[i] = gaussian();
      norm = v.norm();
    } while (norm < 1e-8);
    return v / norm;
  }

 private:
  std::uint64_t state_;
};

}  // namespace conevol

#endif  // CONEVOL_RNG_HPP
