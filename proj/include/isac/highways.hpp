#pragma once
#include <vector>

#include "isac/lattice.hpp"

namespace isac {

// A horizontal (left-right) or vertical (bottom-top) slab of the lattice.
// Horizontal band b owns bond rows [row0, row0 + rows); its crossing paths
// use H bonds in those rows plus V connectors strictly inside the band, so
// adjacent bands are edge-disjoint. Vertical bands are the transpose.
struct BandSpec {
  bool horizontal = true;
  int index = 0;
  int row0 = 0;   // first vertex row (columns for vertical bands)
  int rows = 0;   // crossing-bond rows in the band
  bool complete = true;  // false for the final remainder band
};

struct HighwayPath {
  // verts[k] = (I,J) lattice vertices; edges[k] joins verts[k], verts[k+1].
  std::vector<std::pair<int, int>> verts;
  std::vector<EdgeRef> edges;
  std::vector<CellId> cells;          // cell of each edge
  std::vector<std::int32_t> relays;   // representative node of each cell
};

struct BandHighways {
  BandSpec spec;
  int max_flow = 0;
  std::vector<HighwayPath> paths;
};

struct HighwaySystem {
  int band_rows = 0;  // floor(kappa * log xi)
  std::vector<BandHighways> horizontal;
  std::vector<BandHighways> vertical;

  long total_paths(bool horizontal_side) const;
};

// Edge-disjoint crossing extraction per band via unit-capacity max-flow
// (count equals the Menger bound) followed by flow decomposition.
HighwaySystem extract_highways(const LatticeSystem& lat);

// Count of edge-disjoint left-right crossings of a synthetic band grid:
// h_open[r][c] for rows r of crossing bonds (r in [0,R), c in [0,C)),
// v_open[r][c] for connectors between rows r and r+1 (c in [0,C+1)).
int count_disjoint_crossings(const std::vector<std::vector<std::uint8_t>>& h_open,
                             const std::vector<std::vector<std::uint8_t>>& v_open);

// Guaranteed per-band crossing count eta * kappa * log(xi) with
// xi = sqrt(n) / (sqrt(2) * varsigma * f^(1/alpha_c)). Validates
// eta in (0, 1]; the sharper admissible-eta ceiling is prop1_eta_max.
double prop1_path_count_bound(double n, double varsigma, double gamma,
                              double alpha_c, double kappa, double eta);

// Largest admissible eta, 1 - (kappa*log 6 + 2) / (kappa * varsigma^2 *
// f^(2/alpha_c)); may be <= 0 for small varsigma and f, in which case no
// eta carries the guarantee.
double prop1_eta_max(double varsigma, double gamma, double n, double alpha_c,
                     double kappa);

// Union-bound probability that some rectangle admits fewer than eta*L2
// disjoint crossings: (4/3) * m1 * (p/(p-q))^(eta*L2) * (3*(1-q))^L2 with
// m1 = L1. Requires 0 <= q < p <= 1 and eta > 0.
double lemma3_crossing_failure_bound(double p, double q, double eta,
                                     double L1, double L2);

// Network-wide guaranteed highway count eta * sqrt(n) / (sqrt(2) * varsigma *
// f^(1/alpha_c)) -- the per-band guarantee summed over all bands.
double prop1_total_highway_count(double n, double varsigma, double gamma,
                                 double alpha_c, double eta);

}  // namespace isac
