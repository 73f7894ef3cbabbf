#include "isac/highways.hpp"

#include <cmath>

#include "isac/errors.hpp"
#include "isac/maxflow.hpp"

namespace isac {

long HighwaySystem::total_paths(bool horizontal_side) const {
  long total = 0;
  for (const BandHighways& b : horizontal_side ? horizontal : vertical) {
    total += static_cast<long>(b.paths.size());
  }
  return total;
}

namespace {

// Crossing extraction in band-local coordinates: vertices (t, r) with t
// along the crossing direction (0..dim) and r across the band
// (row0..row0+rows). For horizontal bands (t, r) = (I, J); for vertical
// bands (t, r) = (J, I).
struct BandFrame {
  const LatticeSystem& lat;
  bool horizontal;
  int row0;
  int rows;

  EdgeRef crossing_edge(int t, int r) const {
    return horizontal ? EdgeRef{Orient::H, t, r} : EdgeRef{Orient::V, r, t};
  }
  EdgeRef connector_edge(int t, int r) const {
    return horizontal ? EdgeRef{Orient::V, t, r} : EdgeRef{Orient::H, r, t};
  }
  std::pair<int, int> vertex(int t, int r) const {
    return horizontal ? std::pair<int, int>{t, r} : std::pair<int, int>{r, t};
  }
};

BandHighways extract_band(const LatticeSystem& lat, const BandSpec& spec) {
  BandHighways out;
  out.spec = spec;
  const BandFrame frame{lat, spec.horizontal, spec.row0, spec.rows};
  const int dim = lat.dim;
  const int along = dim + 1;  // vertices per row in the crossing direction

  const int src = 0, snk = 1;
  auto node_id = [&](int t, int r) { return 2 + (r - spec.row0) * along + t; };
  MaxFlow flow(2 + along * spec.rows);

  for (int r = spec.row0; r < spec.row0 + spec.rows; ++r) {
    flow.add_edge(src, node_id(0, r), spec.rows, 0);
    flow.add_edge(node_id(dim, r), snk, spec.rows, 0);
    for (int t = 0; t < dim; ++t) {
      const EdgeRef e = frame.crossing_edge(t, r);
      if (lat.edge_open(e)) {
        flow.add_edge(node_id(t, r), node_id(t + 1, r), 1, 1);
      }
    }
    if (r + 1 < spec.row0 + spec.rows) {
      for (int t = 0; t <= dim; ++t) {
        const EdgeRef e = frame.connector_edge(t, r);
        if (lat.edge_open(e)) {
          flow.add_edge(node_id(t, r), node_id(t, r + 1), 1, 1);
        }
      }
    }
  }

  out.max_flow = flow.solve(src, snk);
  for (const std::vector<int>& walk : flow.unit_paths(src, snk)) {
    if (walk.size() < 4) {
      throw InvariantViolation("crossing path shorter than one bond");
    }
    HighwayPath path;
    for (std::size_t k = 1; k + 1 < walk.size(); ++k) {
      const int local = walk[k] - 2;
      const int t = local % along;
      const int r = spec.row0 + local / along;
      path.verts.push_back(frame.vertex(t, r));
    }
    for (std::size_t k = 0; k + 1 < path.verts.size(); ++k) {
      const auto [i1, j1] = path.verts[k];
      const auto [i2, j2] = path.verts[k + 1];
      EdgeRef e;
      if (j1 == j2 && std::abs(i1 - i2) == 1) {
        e = EdgeRef{Orient::H, std::min(i1, i2), j1};
      } else if (i1 == i2 && std::abs(j1 - j2) == 1) {
        e = EdgeRef{Orient::V, i1, std::min(j1, j2)};
      } else {
        throw InvariantViolation("non-adjacent vertices on crossing path");
      }
      if (!lat.edge_open(e)) {
        throw InvariantViolation("crossing path uses a closed bond");
      }
      path.edges.push_back(e);
      const CellId c = lat.cell_of_edge(e);
      path.cells.push_back(c);
      const int rep = lat.representative(c);
      if (rep < 0) {
        throw InvariantViolation("open bond with an empty relay cell");
      }
      path.relays.push_back(rep);
    }
    out.paths.push_back(std::move(path));
  }
  return out;
}

}  // namespace

HighwaySystem extract_highways(const LatticeSystem& lat) {
  HighwaySystem sys;
  sys.band_rows = static_cast<int>(
      std::floor(lat.params.kappa * std::log(lat.xi)));
  if (sys.band_rows < 1) {
    throw ConfigError("band height kappa*log(xi) below one row");
  }
  const int vertex_rows = lat.dim + 1;
  const int complete = vertex_rows / sys.band_rows;
  const int rem = vertex_rows % sys.band_rows;

  for (int side = 0; side < 2; ++side) {
    const bool horizontal = side == 0;
    auto& bands = horizontal ? sys.horizontal : sys.vertical;
    for (int b = 0; b < complete; ++b) {
      BandSpec spec{horizontal, b, b * sys.band_rows, sys.band_rows, true};
      bands.push_back(extract_band(lat, spec));
    }
    if (rem > 0) {
      BandSpec spec{horizontal, complete, complete * sys.band_rows, rem,
                    false};
      bands.push_back(extract_band(lat, spec));
    }
  }
  return sys;
}

int count_disjoint_crossings(
    const std::vector<std::vector<std::uint8_t>>& h_open,
    const std::vector<std::vector<std::uint8_t>>& v_open) {
  const int rows = static_cast<int>(h_open.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(h_open[0].size());
  if (cols == 0) return 0;
  for (const auto& row : h_open) {
    if (static_cast<int>(row.size()) != cols) {
      throw ConfigError("ragged crossing-bond matrix");
    }
  }
  if (static_cast<int>(v_open.size()) != rows - 1) {
    throw ConfigError("connector matrix must have one fewer row");
  }
  for (const auto& row : v_open) {
    if (static_cast<int>(row.size()) != cols + 1) {
      throw ConfigError("connector matrix must have one more column");
    }
  }

  const int src = 0, snk = 1;
  auto node_id = [&](int t, int r) { return 2 + r * (cols + 1) + t; };
  MaxFlow flow(2 + (cols + 1) * rows);
  for (int r = 0; r < rows; ++r) {
    flow.add_edge(src, node_id(0, r), rows, 0);
    flow.add_edge(node_id(cols, r), snk, rows, 0);
    for (int t = 0; t < cols; ++t) {
      if (h_open[r][t]) {
        flow.add_edge(node_id(t, r), node_id(t + 1, r), 1, 1);
      }
    }
    if (r + 1 < rows) {
      for (int t = 0; t <= cols; ++t) {
        if (v_open[r][t]) {
          flow.add_edge(node_id(t, r), node_id(t, r + 1), 1, 1);
        }
      }
    }
  }
  return flow.solve(src, snk);
}

double prop1_path_count_bound(double n, double varsigma, double gamma,
                              double alpha_c, double kappa, double eta) {
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw ConfigError("eta must lie in (0, 1]");
  }
  const double c = varsigma * std::pow(f_value(n, gamma), 1.0 / alpha_c);
  const double xi = std::sqrt(n) / (std::sqrt(2.0) * c);
  if (!(xi > 1.0)) {
    throw ConfigError("lattice too small for a crossing guarantee");
  }
  return eta * kappa * std::log(xi);
}

double prop1_eta_max(double varsigma, double gamma, double n, double alpha_c,
                     double kappa) {
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  const double f23 = std::pow(f_value(n, gamma), 2.0 / alpha_c);
  return 1.0 - (kappa * std::log(6.0) + 2.0) /
                   (kappa * varsigma * varsigma * f23);
}

double lemma3_crossing_failure_bound(double p, double q, double eta,
                                     double L1, double L2) {
  if (!(q >= 0.0 && q < p && p <= 1.0)) {
    throw DomainError("requires 0 <= q < p <= 1");
  }
  if (!(eta > 0.0)) throw DomainError("eta must be positive");
  if (!(L1 > 0.0 && L2 > 0.0)) {
    throw ConfigError("rectangle dimensions must be positive");
  }
  const double m1 = L1;
  return (4.0 / 3.0) * m1 * std::pow(p / (p - q), eta * L2) *
         std::pow(3.0 * (1.0 - q), L2);
}

double prop1_total_highway_count(double n, double varsigma, double gamma,
                                 double alpha_c, double eta) {
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError("eta must lie in (0, 1]");
  const double c = varsigma * std::pow(f_value(n, gamma), 1.0 / alpha_c);
  return eta * std::sqrt(n) / (std::sqrt(2.0) * c);
}

}  // namespace isac
