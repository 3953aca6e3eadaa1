#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace lobert {

// SplitMix64 (Steele, Lea, Flood 2014). Fixed-width integer arithmetic only,
// so seeded streams are identical across standard libraries and platforms.
// All sampling helpers are built on top of it; std:: distributions are
// deliberately not used anywhere in the project.
class Rng {
 public:
  explicit Rng(uint64_t seed) : state_(seed) {}

  uint64_t next_u64() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n), unbiased via rejection.
  uint64_t below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  int64_t range(int64_t lo, int64_t hi_inclusive) {
    return lo + int64_t(below(uint64_t(hi_inclusive - lo + 1)));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller without the cached spare; one draw consumes two uniforms.
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1], keeps log finite
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  double lognormal(double mu, double sigma) { return std::exp(normal(mu, sigma)); }

  // Index into `probs` (need not be normalized).
  size_t categorical(const std::vector<double>& probs) {
    double total = 0.0;
    for (double p : probs) total += p;
    double r = uniform() * total;
    for (size_t i = 0; i + 1 < probs.size(); ++i) {
      r -= probs[i];
      if (r < 0.0) return i;
    }
    return probs.empty() ? 0 : probs.size() - 1;
  }

 private:
  uint64_t state_;
};

}  // namespace lobert
