#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace isac {

// A realized ad hoc network: node positions on the square [0, sqrt(n)]^2 and
// a uniformly random source->destination matching with no fixed points.
struct NetworkInstance {
  double n = 0.0;         // target mean node count (area of the square)
  double side = 0.0;      // sqrt(n)
  std::uint64_t seed = 0;
  Eigen::Matrix2Xd nodes;            // column k = position of node k
  std::vector<std::int32_t> matching;  // matching[k] = destination node of source k

  int count() const { return static_cast<int>(nodes.cols()); }
};

// Draw K ~ Poisson(n), place K nodes uniformly on [0, sqrt(n)]^2, and draw
// the matching. Throws ConfigError for n <= 0 and DomainError when the
// realized instance has fewer than two nodes.
NetworkInstance generate_network(double n, std::uint64_t seed);

// Uniform derangement of {0..count-1} by rejection sampling of uniform
// permutations. Throws DomainError for count < 2.
std::vector<std::int32_t> draw_matching(int count, std::uint64_t seed);

}  // namespace isac
