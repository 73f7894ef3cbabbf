#pragma once
#include <string>
#include <vector>

#include "isac/highways.hpp"
#include "isac/lattice.hpp"

namespace isac {

struct RouteHop {
  CellId cell;
  std::int32_t relay = -1;
  double dist = 0.0;  // from the previous relay (0 for the first cell)
};

struct RoutePlan {
  int src = -1;
  int dst = -1;
  bool routable = false;
  std::string reason;  // empty when routable

  int entry_relay = -1;
  int exit_relay = -1;
  double drain_dist = 0.0;    // source -> entry relay
  double deliver_dist = 0.0;  // exit relay -> destination
  std::vector<RouteHop> hops; // cells visited along the highways
  int highway_hops = 0;       // hops.size() - 1 (0 when entry == exit cell)
  int D = 2;                  // highway hops + draining + delivering
  bool entry_miss = false;    // fading entry fallback used
  bool exit_miss = false;
};

// Per-instance routing state: band membership, round-robin path assignment
// (sources by vertical order for horizontal bands, destinations by
// horizontal order for vertical bands), per-path column/row indexes, and
// optional max-gain entry/exit selection under fading.
class Router {
 public:
  Router(const NetworkInstance& inst, const LatticeSystem& lat,
         const HighwaySystem& highways, double eta, const FadingField* field,
         double g_tau);

  RoutePlan route(int src) const;

  // Upper bound sqrt(2)*kappa*sqrt(n)*log(xi)/xi on the one-hop draining /
  // delivering distance (same bound both phases by symmetry).
  double draining_distance_bound() const;

  int horizontal_band_of_row(int row) const;
  int vertical_band_of_col(int col) const;

 private:
  struct Assignment {
    int band = -1;
    int path = -1;  // index into the band's paths, -1 if none
  };

  const NetworkInstance& inst_;
  const LatticeSystem& lat_;
  const HighwaySystem& hw_;
  const FadingField* field_;
  double g_tau_ = 0.0;
  double eta_ = 0.0;
  int bands_h_ = 0, bands_v_ = 0;

  std::vector<Assignment> entry_;  // by source node
  std::vector<Assignment> exit_;   // by destination node
  // colEdge[band][path][I] = index of the first H edge of that path in
  // column I (rows for vertical bands); -1 when absent.
  std::vector<std::vector<std::vector<std::int32_t>>> h_col_edge_;
  std::vector<std::vector<std::vector<std::int32_t>>> v_row_edge_;
  // Shared lattice vertices (vertex index on the horizontal path, vertex
  // index on the vertical path) for every horizontal/vertical path pair;
  // topologically never empty.
  std::vector<int> h_path_offset_, v_path_offset_;  // band -> global base
  std::vector<std::vector<std::vector<std::pair<int, int>>>> crossings_;

  mutable long entry_misses_ = 0;
  mutable long exit_misses_ = 0;

 public:
  long entry_misses() const { return entry_misses_; }
  long exit_misses() const { return exit_misses_; }
};

}  // namespace isac
