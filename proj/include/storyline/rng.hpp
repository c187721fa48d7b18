#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace storyline {

// Derives an independent stream seed from the master seed and a stream name
// ("synth", "chain-0", ...). FNV-1a over the name, mixed splitmix64-style so
// nearby seeds and names decorrelate.
std::uint64_t derive_seed(std::uint64_t master, const std::string& stream);

// mt19937_64 wrapped with fixed draw algorithms so results do not depend on
// the standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Uniform on [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, n), n >= 1. Rejection sampling, exact.
  std::uint64_t uniform_int(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = engine_();
    } while (v >= limit);
    return v % n;
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Box-Muller, one value per two uniforms.
  double normal(double mu, double sigma) {
    double u1;
    do {
      u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    return mu + sigma * r * std::cos(2.0 * M_PI * u2);
  }

  std::uint64_t raw() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace storyline
