#include "isac/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isac/channel.hpp"
#include "isac/errors.hpp"

namespace isac {

double f_value(double n, double gamma) { return std::pow(n, gamma); }

double open_probability(double varsigma, double gamma, double n,
                        double alpha_c) {
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  const double f = f_value(n, gamma);
  return 1.0 - std::exp(-varsigma * varsigma * std::pow(f, 2.0 / alpha_c));
}

CellId LatticeSystem::cell_of_point(double x, double y) const {
  return CellId{static_cast<int>(std::floor((x + y) / spacing)),
                static_cast<int>(std::floor((y - x) / spacing))};
}

Eigen::Vector2d LatticeSystem::cell_center(CellId c) const {
  return Eigen::Vector2d(0.5 * spacing * (c.i - c.j),
                         0.5 * spacing * (c.i + c.j + 1));
}

EdgeRef LatticeSystem::edge_of_cell(CellId c) const {
  if (((c.i + c.j) & 1) == 0) {
    return EdgeRef{Orient::V, (c.i - c.j) / 2, (c.i + c.j) / 2};
  }
  return EdgeRef{Orient::H, (c.i - c.j - 1) / 2, (c.i + c.j + 1) / 2};
}

CellId LatticeSystem::cell_of_edge(EdgeRef e) const {
  if (e.o == Orient::H) return CellId{e.I + e.J, e.J - e.I - 1};
  return CellId{e.I + e.J, e.J - e.I};
}

int LatticeSystem::connected_neighbors(CellId c, CellId out[6]) const {
  const EdgeRef e = edge_of_cell(c);
  EdgeRef nb[6];
  if (e.o == Orient::H) {
    // Left vertex (I, J) and right vertex (I+1, J).
    nb[0] = EdgeRef{Orient::H, e.I - 1, e.J};
    nb[1] = EdgeRef{Orient::V, e.I, e.J};
    nb[2] = EdgeRef{Orient::V, e.I, e.J - 1};
    nb[3] = EdgeRef{Orient::H, e.I + 1, e.J};
    nb[4] = EdgeRef{Orient::V, e.I + 1, e.J};
    nb[5] = EdgeRef{Orient::V, e.I + 1, e.J - 1};
  } else {
    // Bottom vertex (I, J) and top vertex (I, J+1).
    nb[0] = EdgeRef{Orient::V, e.I, e.J - 1};
    nb[1] = EdgeRef{Orient::H, e.I, e.J};
    nb[2] = EdgeRef{Orient::H, e.I - 1, e.J};
    nb[3] = EdgeRef{Orient::V, e.I, e.J + 1};
    nb[4] = EdgeRef{Orient::H, e.I, e.J + 1};
    nb[5] = EdgeRef{Orient::H, e.I - 1, e.J + 1};
  }
  int k = 0;
  for (const EdgeRef& r : nb) {
    if (edge_in_lattice(r)) out[k++] = cell_of_edge(r);
  }
  return k;
}

int LatticeSystem::forward_neighbors(CellId c, CellId out[3]) const {
  const EdgeRef e = edge_of_cell(c);
  EdgeRef nb[3];
  if (e.o == Orient::H) {
    nb[0] = EdgeRef{Orient::H, e.I + 1, e.J};
    nb[1] = EdgeRef{Orient::V, e.I + 1, e.J};
    nb[2] = EdgeRef{Orient::V, e.I + 1, e.J - 1};
  } else {
    nb[0] = EdgeRef{Orient::V, e.I, e.J + 1};
    nb[1] = EdgeRef{Orient::H, e.I, e.J + 1};
    nb[2] = EdgeRef{Orient::H, e.I - 1, e.J + 1};
  }
  int k = 0;
  for (const EdgeRef& r : nb) {
    if (edge_in_lattice(r)) out[k++] = cell_of_edge(r);
  }
  return k;
}

double LatticeSystem::open_fraction_interior() const {
  long open = 0, total = 0;
  for (int J = 0; J <= dim; ++J) {
    for (int I = 0; I < dim; ++I) {
      const EdgeRef e{Orient::H, I, J};
      if (!interior(cell_of_edge(e))) continue;
      ++total;
      if (edge_open(e)) ++open;
    }
  }
  for (int J = 0; J < dim; ++J) {
    for (int I = 0; I <= dim; ++I) {
      const EdgeRef e{Orient::V, I, J};
      if (!interior(cell_of_edge(e))) continue;
      ++total;
      if (edge_open(e)) ++open;
    }
  }
  return total > 0 ? static_cast<double>(open) / static_cast<double>(total)
                   : 0.0;
}

int LatticeSystem::max_occupancy() const {
  int best = 0;
  for (std::size_t f = 0; f + 1 < cell_start.size(); ++f) {
    best = std::max(best, static_cast<int>(cell_start[f + 1] - cell_start[f]));
  }
  return best;
}

long LatticeSystem::interior_cell_count() const {
  long total = 0;
  for (std::uint8_t v : cell_interior) total += v;
  return total;
}

long LatticeSystem::occupied_interior_count() const {
  long total = 0;
  for (std::size_t f = 0; f + 1 < cell_start.size(); ++f) {
    if (cell_interior[f] && cell_start[f + 1] > cell_start[f]) ++total;
  }
  return total;
}

LatticeSystem partition_cells(const NetworkInstance& inst,
                              const LatticeParams& params) {
  if (!(params.varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(params.alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (params.gamma < 0.0 || params.gamma > params.alpha_c / 2.0) {
    throw ConfigError("gamma must lie in [0, alpha_c/2]");
  }
  if (!(params.kappa > 0.0)) throw ConfigError("kappa must be positive");

  LatticeSystem lat;
  lat.params = params;
  lat.n = inst.n;
  lat.side = inst.side;
  lat.cell_side =
      params.varsigma * std::pow(f_value(inst.n, params.gamma),
                                 1.0 / params.alpha_c);
  lat.spacing = std::sqrt(2.0) * lat.cell_side;
  lat.xi = lat.side / lat.spacing;
  lat.dim = static_cast<int>(std::floor(lat.xi));
  if (lat.dim < 2) {
    throw ConfigError("lattice degenerates: fewer than 2 bond rows (xi = " +
                      std::to_string(lat.xi) + ")");
  }
  const int band_rows =
      static_cast<int>(std::floor(params.kappa * std::log(lat.xi)));
  if (band_rows < 1) {
    throw ConfigError("band height kappa*log(xi) below one row");
  }

  lat.i_count = static_cast<int>(std::floor(2.0 * lat.side / lat.spacing)) + 1;
  const int j_lo = static_cast<int>(std::floor(-lat.side / lat.spacing));
  const int j_hi = static_cast<int>(std::floor(lat.side / lat.spacing));
  lat.j_min = j_lo;
  lat.j_count = j_hi - j_lo + 1;

  const long cells = static_cast<long>(lat.i_count) * lat.j_count;
  lat.cell_start.assign(cells + 1, 0);
  lat.cell_interior.assign(cells, 0);
  lat.cell_rep.assign(cells, -1);

  const int k = inst.count();
  std::vector<std::int32_t> cell_of_node(k);
  for (int v = 0; v < k; ++v) {
    CellId c = lat.cell_of_point(inst.nodes(0, v), inst.nodes(1, v));
    // Numerical clamp: boundary points stay inside the window.
    c.i = std::clamp(c.i, 0, lat.i_count - 1);
    c.j = std::clamp(c.j, lat.j_min, lat.j_min + lat.j_count - 1);
    const int f = lat.flat(c);
    cell_of_node[v] = f;
    ++lat.cell_start[f + 1];
  }
  for (long f = 0; f < cells; ++f) lat.cell_start[f + 1] += lat.cell_start[f];
  lat.cell_nodes.assign(k, -1);
  {
    std::vector<std::int32_t> cursor(lat.cell_start.begin(),
                                     lat.cell_start.end() - 1);
    for (int v = 0; v < k; ++v) {
      lat.cell_nodes[cursor[cell_of_node[v]]++] = v;
    }
  }

  // Interior flags and nearest-center representatives.
  const double eps = 1e-9 * lat.spacing;
  for (int i = 0; i < lat.i_count; ++i) {
    for (int j = lat.j_min; j < lat.j_min + lat.j_count; ++j) {
      const CellId c{i, j};
      const long f = lat.flat(c);
      const Eigen::Vector2d ctr = lat.cell_center(c);
      const double half = 0.5 * lat.spacing;
      const bool interior =
          ctr.x() - half >= -eps && ctr.x() + half <= lat.side + eps &&
          ctr.y() - half >= -eps && ctr.y() + half <= lat.side + eps;
      lat.cell_interior[f] = interior ? 1 : 0;
      const int begin = lat.cell_start[f];
      const int end = lat.cell_start[f + 1];
      if (begin == end) continue;
      int best = -1;
      double best_d2 = std::numeric_limits<double>::infinity();
      for (int t = begin; t < end; ++t) {
        const int node = lat.cell_nodes[t];
        const double d2 = (inst.nodes.col(node) - ctr).squaredNorm();
        if (d2 < best_d2 || (d2 == best_d2 && node < best)) {
          best_d2 = d2;
          best = node;
        }
      }
      lat.cell_rep[f] = best;
    }
  }

  lat.h_open.assign(static_cast<std::size_t>(lat.dim) * (lat.dim + 1), 0);
  lat.v_open.assign(static_cast<std::size_t>(lat.dim + 1) * lat.dim, 0);
  return lat;
}

void mark_open_closed(LatticeSystem& lat) {
  for (int J = 0; J <= lat.dim; ++J) {
    for (int I = 0; I < lat.dim; ++I) {
      const EdgeRef e{Orient::H, I, J};
      const CellId c = lat.cell_of_edge(e);
      lat.set_edge_open(e, lat.interior(c) && lat.occupancy(c) > 0);
    }
  }
  for (int J = 0; J < lat.dim; ++J) {
    for (int I = 0; I <= lat.dim; ++I) {
      const EdgeRef e{Orient::V, I, J};
      const CellId c = lat.cell_of_edge(e);
      lat.set_edge_open(e, lat.interior(c) && lat.occupancy(c) > 0);
    }
  }
}

FadingGateStats apply_fading_gate(LatticeSystem& lat,
                                  const NetworkInstance& inst,
                                  const FadingField& field, int M,
                                  double g_tau, double I_tau, int gate_rings,
                                  double power, double alpha_c) {
  if (M <= 2) throw ConfigError("fading gate requires M > 2");
  FadingGateStats stats;
  const bool check_gain = g_tau > 0.0;
  const bool check_interference = std::isfinite(I_tau);

  const int max_ring =
      gate_rings > 0 ? gate_rings
                     : (2 * std::max(lat.i_count, lat.j_count)) / M + 1;

  long interior_total = 0, open_total = 0;

  auto rep_pos = [&](int node) { return inst.nodes.col(node); };

  // Interference at receiver node `rep_j` while the group of cell (i0,j0)
  // is transmitting: direct sum over occupied same-group cells in rings.
  auto group_interference = [&](const CellId tx, int rep_j) {
    double total = 0.0;
    const Eigen::Vector2d rj = rep_pos(rep_j);
    for (int l = 1; l <= max_ring; ++l) {
      const int d = l * M;
      bool any_in_window = false;
      for (int p = -l; p <= l; ++p) {
        for (int q = -l; q <= l; ++q) {
          if (std::max(std::abs(p), std::abs(q)) != l) continue;
          const CellId c{tx.i + p * M, tx.j + q * M};
          if (!lat.in_window(c)) continue;
          any_in_window = true;
          if (!lat.interior(c)) continue;
          const int rep = lat.representative(c);
          if (rep < 0) continue;
          const double dist = (rep_pos(rep) - rj).norm();
          const double g = field.gain(rep, rep_j);
          total += power * g * path_loss_gain(dist, alpha_c);
        }
      }
      if (!any_in_window && d > std::max(lat.i_count, lat.j_count)) break;
    }
    return total;
  };

  auto cell_open = [&](CellId c) -> bool {
    if (!lat.interior(c)) return false;
    const int rep = lat.representative(c);
    if (rep < 0) {
      ++stats.closed_empty;
      return false;
    }
    if (check_gain) {
      CellId fwd[3];
      const int nf = lat.forward_neighbors(c, fwd);
      for (int t = 0; t < nf; ++t) {
        const int nb_rep = lat.representative(fwd[t]);
        if (nb_rep < 0) continue;  // empty neighbor: no link to test
        if (field.gain(rep, nb_rep) < g_tau) {
          ++stats.closed_gain;
          return false;
        }
      }
    }
    if (check_interference) {
      CellId conn[6];
      const int nc = lat.connected_neighbors(c, conn);
      for (int t = 0; t < nc; ++t) {
        const int nb_rep = lat.representative(conn[t]);
        if (nb_rep < 0) continue;  // no receiver in an empty neighbor
        if (group_interference(c, nb_rep) > I_tau) {
          ++stats.closed_interference;
          return false;
        }
      }
    }
    return true;
  };

  for (int J = 0; J <= lat.dim; ++J) {
    for (int I = 0; I < lat.dim; ++I) {
      const EdgeRef e{Orient::H, I, J};
      const CellId c = lat.cell_of_edge(e);
      const bool open = cell_open(c);
      lat.set_edge_open(e, open);
      if (lat.interior(c)) {
        ++interior_total;
        if (open) ++open_total;
      }
    }
  }
  for (int J = 0; J < lat.dim; ++J) {
    for (int I = 0; I <= lat.dim; ++I) {
      const EdgeRef e{Orient::V, I, J};
      const CellId c = lat.cell_of_edge(e);
      const bool open = cell_open(c);
      lat.set_edge_open(e, open);
      if (lat.interior(c)) {
        ++interior_total;
        if (open) ++open_total;
      }
    }
  }
  stats.open_fraction =
      interior_total > 0
          ? static_cast<double>(open_total) / static_cast<double>(interior_total)
          : 0.0;
  return stats;
}

}  // namespace isac
