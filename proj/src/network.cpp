#include "isac/network.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "isac/errors.hpp"
#include "isac/rng.hpp"

namespace isac {
namespace {

// Exact Poisson(mean) draw via counting unit-rate exponential arrivals in
// [0, mean]; O(mean) like the position generation itself and free of
// library-specific sampling internals.
long poisson_count(double mean, SmallRng& rng) {
  long k = 0;
  double t = rng.exponential();
  while (t <= mean) {
    ++k;
    t += rng.exponential();
  }
  return k;
}

}  // namespace

std::vector<std::int32_t> draw_matching(int count, std::uint64_t seed) {
  if (count < 2) {
    throw DomainError("matching requires at least 2 nodes, got " +
                      std::to_string(count));
  }
  SmallRng rng(derive_seed(seed, 0x6d61746368ULL));  // "match"
  std::vector<std::int32_t> perm(count);
  for (;;) {
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = count - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
      std::swap(perm[i], perm[j]);
    }
    bool fixed_point = false;
    for (int i = 0; i < count; ++i) {
      if (perm[i] == i) {
        fixed_point = true;
        break;
      }
    }
    if (!fixed_point) return perm;
  }
}

NetworkInstance generate_network(double n, std::uint64_t seed) {
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw ConfigError("network size n must be positive and finite");
  }
  NetworkInstance inst;
  inst.n = n;
  inst.side = std::sqrt(n);
  inst.seed = seed;

  SmallRng count_rng(derive_seed(seed, 0x636f756e74ULL));  // "count"
  const long k = poisson_count(n, count_rng);
  if (k < 2) {
    throw DomainError("degenerate instance: realized node count " +
                      std::to_string(k) + " < 2");
  }

  SmallRng pos_rng(derive_seed(seed, 0x706f73ULL));  // "pos"
  inst.nodes.resize(2, k);
  for (long c = 0; c < k; ++c) {
    inst.nodes(0, c) = inst.side * pos_rng.u01_open();
    inst.nodes(1, c) = inst.side * pos_rng.u01_open();
  }

  inst.matching = draw_matching(static_cast<int>(k), seed);
  return inst;
}

}  // namespace isac
