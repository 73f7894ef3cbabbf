#include "isac/routing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "isac/errors.hpp"

namespace isac {

namespace {

// first_edge[t] = lowest edge index whose bond occupies column t (for
// horizontal paths) or row t (for vertical paths); every t is covered
// because the crossing is continuous in the along-direction.
std::vector<std::int32_t> index_path_edges(const HighwayPath& path,
                                           Orient crossing, int dim) {
  std::vector<std::int32_t> table(dim, -1);
  for (std::size_t k = 0; k < path.edges.size(); ++k) {
    const EdgeRef& e = path.edges[k];
    if (e.o != crossing) continue;
    const int t = crossing == Orient::H ? e.I : e.J;
    if (t >= 0 && t < dim && table[t] < 0) {
      table[t] = static_cast<std::int32_t>(k);
    }
  }
  return table;
}

}  // namespace

Router::Router(const NetworkInstance& inst, const LatticeSystem& lat,
               const HighwaySystem& highways, double eta,
               const FadingField* field, double g_tau)
    : inst_(inst), lat_(lat), hw_(highways), field_(field), g_tau_(g_tau),
      eta_(eta) {
  bands_h_ = static_cast<int>(hw_.horizontal.size());
  bands_v_ = static_cast<int>(hw_.vertical.size());
  if (bands_h_ == 0 || bands_v_ == 0) {
    throw InvariantViolation("highway system has no bands");
  }
  const int dim = lat_.dim;

  h_col_edge_.resize(bands_h_);
  for (int b = 0; b < bands_h_; ++b) {
    for (const HighwayPath& p : hw_.horizontal[b].paths) {
      h_col_edge_[b].push_back(index_path_edges(p, Orient::H, dim));
    }
  }
  v_row_edge_.resize(bands_v_);
  for (int b = 0; b < bands_v_; ++b) {
    for (const HighwayPath& p : hw_.vertical[b].paths) {
      v_row_edge_[b].push_back(index_path_edges(p, Orient::V, dim));
    }
  }

  // Round-robin load balancing: sources ordered by height within their
  // horizontal band, destinations by abscissa within their vertical band.
  const int k = inst_.count();
  entry_.assign(k, Assignment{});
  exit_.assign(k, Assignment{});
  std::vector<std::vector<std::pair<double, int>>> by_h(bands_h_);
  std::vector<std::vector<std::pair<double, int>>> by_v(bands_v_);
  for (int v = 0; v < k; ++v) {
    const double x = inst_.nodes(0, v);
    const double y = inst_.nodes(1, v);
    const int row = std::clamp(
        static_cast<int>(std::floor(y / lat_.spacing)), 0, dim);
    const int col = std::clamp(
        static_cast<int>(std::floor(x / lat_.spacing)), 0, dim);
    by_h[horizontal_band_of_row(row)].push_back({y, v});
    by_v[vertical_band_of_col(col)].push_back({x, v});
  }
  for (int b = 0; b < bands_h_; ++b) {
    std::sort(by_h[b].begin(), by_h[b].end());
    const int paths = static_cast<int>(hw_.horizontal[b].paths.size());
    for (std::size_t t = 0; t < by_h[b].size(); ++t) {
      entry_[by_h[b][t].second] =
          Assignment{b, paths > 0 ? static_cast<int>(t % paths) : -1};
    }
  }
  for (int b = 0; b < bands_v_; ++b) {
    std::sort(by_v[b].begin(), by_v[b].end());
    const int paths = static_cast<int>(hw_.vertical[b].paths.size());
    for (std::size_t t = 0; t < by_v[b].size(); ++t) {
      exit_[by_v[b][t].second] =
          Assignment{b, paths > 0 ? static_cast<int>(t % paths) : -1};
    }
  }

  // Precompute shared vertices for every horizontal/vertical path pair.
  h_path_offset_.assign(bands_h_ + 1, 0);
  for (int b = 0; b < bands_h_; ++b) {
    h_path_offset_[b + 1] =
        h_path_offset_[b] + static_cast<int>(hw_.horizontal[b].paths.size());
  }
  v_path_offset_.assign(bands_v_ + 1, 0);
  for (int b = 0; b < bands_v_; ++b) {
    v_path_offset_[b + 1] =
        v_path_offset_[b] + static_cast<int>(hw_.vertical[b].paths.size());
  }
  const int total_h = h_path_offset_[bands_h_];
  const int total_v = v_path_offset_[bands_v_];
  auto key_of = [&](std::pair<int, int> v) {
    return static_cast<long>(v.first) * (dim + 2) + v.second;
  };
  // vertex -> every (horizontal path, vertex position) that visits it.
  // Edge-disjoint paths may still share vertices, hence the list.
  std::unordered_map<long, std::vector<std::pair<int, int>>> vert_owners;
  {
    int hp = 0;
    for (int b = 0; b < bands_h_; ++b) {
      for (const HighwayPath& p : hw_.horizontal[b].paths) {
        for (std::size_t m = 0; m < p.verts.size(); ++m) {
          vert_owners[key_of(p.verts[m])].push_back(
              {hp, static_cast<int>(m)});
        }
        ++hp;
      }
    }
  }
  crossings_.assign(total_h, std::vector<std::vector<std::pair<int, int>>>(
                                 total_v));
  {
    int vp = 0;
    for (int b = 0; b < bands_v_; ++b) {
      for (const HighwayPath& p : hw_.vertical[b].paths) {
        for (std::size_t mv = 0; mv < p.verts.size(); ++mv) {
          const auto it = vert_owners.find(key_of(p.verts[mv]));
          if (it == vert_owners.end()) continue;
          for (const auto& [hp, mh] : it->second) {
            crossings_[hp][vp].push_back({mh, static_cast<int>(mv)});
          }
        }
        ++vp;
      }
    }
  }
}

double Router::draining_distance_bound() const {
  return std::sqrt(2.0) * lat_.params.kappa * std::sqrt(lat_.n) *
         std::log(lat_.xi) / lat_.xi;
}

int Router::horizontal_band_of_row(int row) const {
  if (row < 0 || row > lat_.dim) throw ConfigError("vertex row out of range");
  return std::min(row / hw_.band_rows, bands_h_ - 1);
}

int Router::vertical_band_of_col(int col) const {
  if (col < 0 || col > lat_.dim) throw ConfigError("vertex column out of range");
  return std::min(col / hw_.band_rows, bands_v_ - 1);
}

namespace {

// Number of relay cells traversed along a path from the cell of edge k to
// the vertex at index m (walking over consecutive path edges).
int cells_to_vertex(int k, int m) {
  return m > k ? m - k : k - m + 1;
}
int cells_from_vertex(int m, int k) {
  return k >= m ? k - m + 1 : m - k;
}

}  // namespace

RoutePlan Router::route(int src) const {
  RoutePlan plan;
  plan.src = src;
  plan.dst = inst_.matching[src];
  const int dim = lat_.dim;

  const Assignment ah = entry_[src];
  const Assignment av = exit_[plan.dst];
  if (ah.path < 0) {
    plan.reason = "no crossing path in the source band";
    return plan;
  }
  if (av.path < 0) {
    plan.reason = "no crossing path in the destination band";
    return plan;
  }
  const HighwayPath& ph = hw_.horizontal[ah.band].paths[ah.path];
  const HighwayPath& pv = hw_.vertical[av.band].paths[av.path];
  const std::vector<std::int32_t>& cols = h_col_edge_[ah.band][ah.path];
  const std::vector<std::int32_t>& rows = v_row_edge_[av.band][av.path];

  const Eigen::Vector2d sp = inst_.nodes.col(src);
  const Eigen::Vector2d dp = inst_.nodes.col(plan.dst);
  const int i_src = std::clamp(
      static_cast<int>(std::floor(sp.x() / lat_.spacing)), 0, dim - 1);
  const int j_dst = std::clamp(
      static_cast<int>(std::floor(dp.y() / lat_.spacing)), 0, dim - 1);

  // Diversity window: under fading pick the best of ~eta*kappa*log(xi)
  // candidate relays around the nominal column/row; otherwise the nominal
  // entry alone.
  const bool diversity = field_ != nullptr && g_tau_ > 0.0;
  const int h_candidates =
      diversity ? std::max(1, static_cast<int>(std::ceil(
                         eta_ * lat_.params.kappa * std::log(lat_.xi))))
                : 1;

  auto pick = [&](const std::vector<std::int32_t>& table, int t0,
                  const HighwayPath& path, int node, bool& miss) {
    int best_k = -1;
    double best_gain = -1.0;
    int found = 0;
    for (int span = 0; found < h_candidates && span < dim; ++span) {
      const int sides = span == 0 ? 1 : 2;
      for (int z = 0; z < sides && found < h_candidates; ++z) {
        const int t = z == 0 ? t0 + span : t0 - span;
        if (t < 0 || t >= dim) continue;
        const std::int32_t k = table[t];
        if (k < 0) {
          throw InvariantViolation("crossing path misses a column");
        }
        ++found;
        const int relay = path.relays[k];
        const double gain =
            (!diversity || relay == node)
                ? std::numeric_limits<double>::infinity()
                : field_->gain(node, relay);
        if (gain > best_gain) {
          best_gain = gain;
          best_k = k;
        }
      }
      if (!diversity) break;
    }
    if (best_k < 0) throw InvariantViolation("no entry candidate found");
    miss = diversity && best_gain < g_tau_;
    return best_k;
  };

  bool entry_miss = false, exit_miss = false;
  const int k_e = pick(cols, i_src, ph, src, entry_miss);
  const int k_x = pick(rows, j_dst, pv, plan.dst, exit_miss);
  plan.entry_miss = entry_miss;
  plan.exit_miss = exit_miss;
  if (entry_miss) ++entry_misses_;
  if (exit_miss) ++exit_misses_;

  // Crossing vertex: the horizontal and vertical paths must share at least
  // one lattice vertex; choose the one minimizing the total relay count.
  const int hp_global = h_path_offset_[ah.band] + ah.path;
  const int vp_global = v_path_offset_[av.band] + av.path;
  const auto& shared = crossings_[hp_global][vp_global];
  if (shared.empty()) {
    throw InvariantViolation(
        "horizontal and vertical crossing paths share no vertex");
  }
  int best_mh = -1, best_mv = -1, best_cost = std::numeric_limits<int>::max();
  for (const auto& [mh, mv] : shared) {
    const int cost = cells_to_vertex(k_e, mh) + cells_from_vertex(mv, k_x);
    if (cost < best_cost ||
        (cost == best_cost && (mh < best_mh ||
                               (mh == best_mh && mv < best_mv)))) {
      best_cost = cost;
      best_mh = mh;
      best_mv = mv;
    }
  }

  // Relay cell sequence: entry cell -> crossing vertex along the horizontal
  // path, then crossing vertex -> exit cell along the vertical path.
  std::vector<int> seq_h, seq_v;
  if (best_mh > k_e) {
    for (int k = k_e; k <= best_mh - 1; ++k) seq_h.push_back(k);
  } else {
    for (int k = k_e; k >= best_mh; --k) seq_h.push_back(k);
  }
  if (k_x >= best_mv) {
    for (int k = best_mv; k <= k_x; ++k) seq_v.push_back(k);
  } else {
    for (int k = best_mv - 1; k >= k_x; --k) seq_v.push_back(k);
  }

  plan.hops.clear();
  auto push_hop = [&](const HighwayPath& path, int k) {
    const CellId cell = path.cells[k];
    if (!plan.hops.empty() && plan.hops.back().cell == cell) return;
    RouteHop hop;
    hop.cell = cell;
    hop.relay = path.relays[k];
    if (!plan.hops.empty()) {
      hop.dist = (inst_.nodes.col(hop.relay) -
                  inst_.nodes.col(plan.hops.back().relay))
                     .norm();
    }
    plan.hops.push_back(hop);
  };
  for (const int k : seq_h) push_hop(ph, k);
  for (const int k : seq_v) push_hop(pv, k);
  if (plan.hops.empty()) {
    throw InvariantViolation("route produced no relay cells");
  }

  plan.entry_relay = plan.hops.front().relay;
  plan.exit_relay = plan.hops.back().relay;
  plan.drain_dist = (sp - inst_.nodes.col(plan.entry_relay)).norm();
  plan.deliver_dist = (dp - inst_.nodes.col(plan.exit_relay)).norm();
  plan.highway_hops = static_cast<int>(plan.hops.size()) - 1;
  plan.D = plan.highway_hops + 2;
  plan.routable = true;
  return plan;
}

}  // namespace isac
