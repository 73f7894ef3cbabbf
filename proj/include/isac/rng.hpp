#pragma once
#include <cmath>
#include <cstdint>
#include <limits>

namespace isac {

// SplitMix64 step (Steele et al.); used both as a seed mixer and as the
// counter-based uniform source for everything that must be reproducible
// independently of platform library internals.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derive an independent stream seed from a base seed and up to three tags.
inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t t1,
                                 std::uint64_t t2 = 0, std::uint64_t t3 = 0) {
  std::uint64_t s = base;
  splitmix64(s);
  s ^= 0x9e3779b97f4a7c15ULL * (t1 + 1);
  splitmix64(s);
  s ^= 0xbf58476d1ce4e5b9ULL * (t2 + 1);
  splitmix64(s);
  s ^= 0x94d049bb133111ebULL * (t3 + 1);
  std::uint64_t out = splitmix64(s);
  return out;
}

// Minimal counter-based engine over splitmix64. Deterministic across
// platforms and thread schedules; cheap enough to construct per query.
class SmallRng {
 public:
  explicit SmallRng(std::uint64_t seed) : state_(seed) {}

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<std::uint64_t>::max();
  }
  result_type operator()() { return splitmix64(state_); }

  // Uniform in (0, 1]: never returns 0, so -log(u01()) is always finite.
  double u01() {
    const std::uint64_t r = splitmix64(state_);
    return (static_cast<double>(r >> 11) + 1.0) * 0x1.0p-53;
  }

  // Uniform in [0, 1).
  double u01_open() {
    const std::uint64_t r = splitmix64(state_);
    return static_cast<double>(r >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound) by rejection-free multiply-shift with a
  // correction loop for exactness.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's method with rejection to remove modulo bias.
    std::uint64_t x = splitmix64(state_);
    __uint128_t m = static_cast<__uint128_t>(x) * bound;
    auto lo = static_cast<std::uint64_t>(m);
    if (lo < bound) {
      const std::uint64_t threshold = (0ULL - bound) % bound;
      while (lo < threshold) {
        x = splitmix64(state_);
        m = static_cast<__uint128_t>(x) * bound;
        lo = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  double exponential() { return -std::log(u01()); }

  // Box-Muller; consumes exactly two uniforms per pair, caches the second.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u = u01();
    const double v = u01_open();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double theta = 2.0 * M_PI * v;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

  // Gamma(shape, scale) via Marsaglia-Tsang; shape < 1 handled by boosting.
  double gamma(double shape, double scale) {
    if (shape < 1.0) {
      const double u = u01();
      return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double cc = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x = normal();
      double v = 1.0 + cc * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      const double u = u01();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
      if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
        return d * v * scale;
      }
    }
  }

 private:
  std::uint64_t state_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace isac
