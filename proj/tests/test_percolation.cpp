// Tilted-lattice partition, bond bookkeeping, max-flow, and the crossing
// extraction plus its closed-form guarantees.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <vector>

#include "isac/errors.hpp"
#include "isac/highways.hpp"
#include "isac/lattice.hpp"
#include "isac/maxflow.hpp"
#include "isac/network.hpp"
#include "isac/rng.hpp"

using namespace isac;

namespace {

LatticeSystem make_lattice(double n, std::uint64_t seed, double varsigma,
                           NetworkInstance& inst_out) {
  inst_out = generate_network(n, seed);
  LatticeParams lp;
  lp.n = n;
  lp.varsigma = varsigma;
  lp.gamma = 0.0;
  lp.alpha_c = 3.0;
  lp.kappa = 2.0;
  return partition_cells(inst_out, lp);
}

// Independent max-flow oracle: BFS augmenting paths over an explicit
// capacity matrix (slow and simple on purpose).
int augmenting_path_flow(std::vector<std::vector<int>> cap, int s, int t) {
  const int n = static_cast<int>(cap.size());
  int flow = 0;
  for (;;) {
    std::vector<int> parent(n, -1);
    parent[s] = s;
    std::queue<int> q;
    q.push(s);
    while (!q.empty() && parent[t] == -1) {
      const int u = q.front();
      q.pop();
      for (int v = 0; v < n; ++v) {
        if (parent[v] == -1 && cap[u][v] > 0) {
          parent[v] = u;
          q.push(v);
        }
      }
    }
    if (parent[t] == -1) return flow;
    for (int v = t; v != s; v = parent[v]) {
      cap[parent[v]][v] -= 1;
      cap[v][parent[v]] += 1;
    }
    ++flow;
  }
}

// Crossing count of a synthetic band by the oracle above.
int oracle_crossings(const std::vector<std::vector<std::uint8_t>>& h,
                     const std::vector<std::vector<std::uint8_t>>& v) {
  const int R = static_cast<int>(h.size());
  const int C = static_cast<int>(h[0].size());
  const int nodes = R * (C + 1) + 2;
  const int S = nodes - 2, T = nodes - 1;
  auto id = [&](int r, int b) { return r * (C + 1) + b; };
  std::vector<std::vector<int>> cap(nodes, std::vector<int>(nodes, 0));
  for (int r = 0; r < R; ++r) {
    cap[S][id(r, 0)] = R;
    cap[id(r, C)][T] = R;
    for (int c = 0; c < C; ++c) {
      if (h[r][c]) {
        cap[id(r, c)][id(r, c + 1)] += 1;
        cap[id(r, c + 1)][id(r, c)] += 1;
      }
    }
  }
  for (int r = 0; r + 1 < R; ++r) {
    for (int b = 0; b <= C; ++b) {
      if (v[r][b]) {
        cap[id(r, b)][id(r + 1, b)] += 1;
        cap[id(r + 1, b)][id(r, b)] += 1;
      }
    }
  }
  return augmenting_path_flow(std::move(cap), S, T);
}

void random_band(SmallRng& rng, int R, int C, double p,
                 std::vector<std::vector<std::uint8_t>>& h,
                 std::vector<std::vector<std::uint8_t>>& v) {
  h.assign(R, std::vector<std::uint8_t>(C, 0));
  v.assign(R - 1, std::vector<std::uint8_t>(C + 1, 0));
  for (auto& row : h) {
    for (auto& bit : row) bit = rng.u01_open() < p ? 1 : 0;
  }
  for (auto& row : v) {
    for (auto& bit : row) bit = rng.u01_open() < p ? 1 : 0;
  }
}

}  // namespace

TEST_CASE("power scaling and open probability") {
  CHECK(f_value(1e4, 0.5) == doctest::Approx(100.0));
  CHECK(f_value(123.0, 0.0) == 1.0);
  CHECK(open_probability(1.0, 0.0, 1e4, 3.0) ==
        doctest::Approx(0.6321205588285577).epsilon(1e-12));
  CHECK(open_probability(2.0, 0.0, 1e4, 3.0) ==
        doctest::Approx(0.9816843611112658).epsilon(1e-12));
  // Larger cells (higher power) make occupancy more likely.
  CHECK(open_probability(2.0, 0.6, 1e4, 3.0) >
        open_probability(2.0, 0.0, 1e4, 3.0));
  CHECK_THROWS_AS(open_probability(0.0, 0.0, 1e4, 3.0), ConfigError);
}

TEST_CASE("partition covers every node exactly once") {
  NetworkInstance inst;
  const LatticeSystem lat = make_lattice(20000.0, 7, 2.0, inst);
  CHECK(lat.cell_side == doctest::Approx(2.0));
  CHECK(lat.dim == static_cast<int>(std::floor(lat.xi)));

  long total = 0;
  std::vector<int> seen(inst.count(), 0);
  for (int i = 0; i < lat.i_count; ++i) {
    for (int j = lat.j_min; j < lat.j_min + lat.j_count; ++j) {
      const CellId c{i, j};
      const int f = lat.flat(c);
      total += lat.occupancy(c);
      for (int t = lat.cell_start[f]; t < lat.cell_start[f + 1]; ++t) {
        const int node = lat.cell_nodes[t];
        ++seen[node];
        // The node's own coordinates map back into this cell (up to the
        // boundary clamp applied during binning).
        const CellId back = lat.cell_of_point(inst.nodes(0, node),
                                              inst.nodes(1, node));
        const CellId clamped{
            std::clamp(back.i, 0, lat.i_count - 1),
            std::clamp(back.j, lat.j_min, lat.j_min + lat.j_count - 1)};
        CHECK(clamped == c);
      }
    }
  }
  CHECK(total == inst.count());
  CHECK(std::all_of(seen.begin(), seen.end(), [](int v) { return v == 1; }));
}

TEST_CASE("representatives are the nodes nearest the cell centers") {
  NetworkInstance inst;
  const LatticeSystem lat = make_lattice(8000.0, 13, 2.0, inst);
  for (int i = 0; i < lat.i_count; ++i) {
    for (int j = lat.j_min; j < lat.j_min + lat.j_count; ++j) {
      const CellId c{i, j};
      const int f = lat.flat(c);
      const int rep = lat.cell_rep[f];
      if (lat.occupancy(c) == 0) {
        CHECK(rep == -1);
        continue;
      }
      REQUIRE(rep >= 0);
      const Eigen::Vector2d ctr = lat.cell_center(c);
      const double rep_d2 = (inst.nodes.col(rep) - ctr).squaredNorm();
      bool member = false;
      for (int t = lat.cell_start[f]; t < lat.cell_start[f + 1]; ++t) {
        const int node = lat.cell_nodes[t];
        if (node == rep) member = true;
        CHECK((inst.nodes.col(node) - ctr).squaredNorm() >=
              rep_d2 - 1e-12);
      }
      CHECK(member);
    }
  }
}

TEST_CASE("interior flag matches the bounding-box rule") {
  NetworkInstance inst;
  const LatticeSystem lat = make_lattice(8000.0, 21, 2.0, inst);
  const double half = 0.5 * lat.spacing;
  const double eps = 1e-9 * lat.spacing;
  for (int i = 0; i < lat.i_count; ++i) {
    for (int j = lat.j_min; j < lat.j_min + lat.j_count; ++j) {
      const CellId c{i, j};
      const Eigen::Vector2d ctr = lat.cell_center(c);
      const bool inside =
          ctr.x() - half >= -eps && ctr.x() + half <= lat.side + eps &&
          ctr.y() - half >= -eps && ctr.y() + half <= lat.side + eps;
      CHECK(lat.interior(c) == inside);
    }
  }
}

TEST_CASE("cell and bond indices are a bijection") {
  NetworkInstance inst;
  const LatticeSystem lat = make_lattice(8000.0, 3, 2.0, inst);
  // Every lattice bond maps to a cell that maps back to it.
  for (int J = 0; J <= lat.dim; ++J) {
    for (int I = 0; I < lat.dim; ++I) {
      const EdgeRef e{Orient::H, I, J};
      CHECK(lat.edge_of_cell(lat.cell_of_edge(e)) == e);
    }
  }
  for (int J = 0; J < lat.dim; ++J) {
    for (int I = 0; I <= lat.dim; ++I) {
      const EdgeRef e{Orient::V, I, J};
      CHECK(lat.edge_of_cell(lat.cell_of_edge(e)) == e);
    }
  }
  // And every window cell with an in-lattice bond round-trips.
  for (int i = 0; i < lat.i_count; ++i) {
    for (int j = lat.j_min; j < lat.j_min + lat.j_count; ++j) {
      const CellId c{i, j};
      const EdgeRef e = lat.edge_of_cell(c);
      if (lat.edge_in_lattice(e)) CHECK(lat.cell_of_edge(e) == c);
    }
  }
}

TEST_CASE("bond neighborhoods are symmetric and forward-consistent") {
  NetworkInstance inst;
  const LatticeSystem lat = make_lattice(8000.0, 17, 2.0, inst);
  auto contains = [](const CellId* arr, int n, CellId c) {
    for (int k = 0; k < n; ++k) {
      if (arr[k] == c) return true;
    }
    return false;
  };
  for (int J = 0; J <= lat.dim; ++J) {
    for (int I = 0; I < lat.dim; ++I) {
      const CellId c = lat.cell_of_edge(EdgeRef{Orient::H, I, J});
      CellId nb[6], fwd[3], back[6];
      const int nn = lat.connected_neighbors(c, nb);
      CHECK(nn <= 6);
      for (int k = 0; k < nn; ++k) {
        const int bn = lat.connected_neighbors(nb[k], back);
        CHECK(contains(back, bn, c));
      }
      const int nf = lat.forward_neighbors(c, fwd);
      CHECK(nf <= 3);
      for (int k = 0; k < nf; ++k) CHECK(contains(nb, nn, fwd[k]));
    }
  }
}

TEST_CASE("bond openness equals occupied-and-interior") {
  NetworkInstance inst;
  LatticeSystem lat = make_lattice(20000.0, 29, 2.0, inst);
  mark_open_closed(lat);
  long open = 0;
  for (int J = 0; J <= lat.dim; ++J) {
    for (int I = 0; I < lat.dim; ++I) {
      const EdgeRef e{Orient::H, I, J};
      const CellId c = lat.cell_of_edge(e);
      CHECK(lat.edge_open(e) ==
            (lat.interior(c) && lat.occupancy(c) > 0));
      open += lat.edge_open(e) ? 1 : 0;
    }
  }
  for (int J = 0; J < lat.dim; ++J) {
    for (int I = 0; I <= lat.dim; ++I) {
      const EdgeRef e{Orient::V, I, J};
      const CellId c = lat.cell_of_edge(e);
      CHECK(lat.edge_open(e) ==
            (lat.interior(c) && lat.occupancy(c) > 0));
      open += lat.edge_open(e) ? 1 : 0;
    }
  }
  CHECK(open > 0);
}

TEST_CASE("interior open fraction tracks the closed form") {
  NetworkInstance inst = generate_network(1e5, 31);
  LatticeParams lp;
  lp.n = 1e5;
  lp.varsigma = 2.0;
  lp.gamma = 0.0;
  lp.alpha_c = 3.0;
  lp.kappa = 2.0;
  LatticeSystem lat = partition_cells(inst, lp);
  mark_open_closed(lat);
  const double expect = open_probability(2.0, 0.0, 1e5, 3.0);
  CHECK(std::abs(lat.open_fraction_interior() - expect) < 0.01);
}

TEST_CASE("degenerate lattices are rejected") {
  NetworkInstance inst = generate_network(20.0, 5);
  LatticeParams lp;
  lp.n = 20.0;
  lp.varsigma = 2.0;
  lp.gamma = 0.0;
  lp.alpha_c = 3.0;
  lp.kappa = 2.0;
  CHECK_THROWS_AS(partition_cells(inst, lp), ConfigError);
}

TEST_CASE("max-flow solves hand-built graphs") {
  {
    // Diamond: two edge-disjoint s->t paths.
    MaxFlow f(4);
    f.add_edge(0, 1, 1, 1);
    f.add_edge(0, 2, 1, 1);
    f.add_edge(1, 3, 1, 1);
    f.add_edge(2, 3, 1, 1);
    CHECK(f.solve(0, 3) == 2);
    const auto paths = f.unit_paths(0, 3);
    REQUIRE(paths.size() == 2);
    for (const auto& p : paths) {
      CHECK(p.front() == 0);
      CHECK(p.back() == 3);
    }
  }
  {
    // Bottleneck in the middle limits the flow to 1.
    MaxFlow f(6);
    f.add_edge(0, 1, 1, 1);
    f.add_edge(0, 2, 1, 1);
    f.add_edge(1, 3, 1, 1);
    f.add_edge(2, 3, 1, 1);
    f.add_edge(3, 4, 1, 1);
    f.add_edge(4, 5, 1, 1);
    CHECK(f.solve(0, 5) == 1);
  }
  {
    // net_flow reports direction on the forward arc.
    MaxFlow f(2);
    const int arc = f.add_edge(0, 1, 3, 0);
    CHECK(f.solve(0, 1) == 3);
    CHECK(f.net_flow(arc) == 3);
  }
}

TEST_CASE("crossing count equals an independent augmenting-path oracle") {
  SmallRng rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    const double p = 0.45 + 0.15 * (trial % 3);
    std::vector<std::vector<std::uint8_t>> h, v;
    random_band(rng, 20, 20, p, h, v);
    CHECK(count_disjoint_crossings(h, v) == oracle_crossings(h, v));
  }
}

TEST_CASE("crossing count is monotone in bond openings") {
  SmallRng rng(77);
  std::vector<std::vector<std::uint8_t>> h, v;
  random_band(rng, 12, 16, 0.6, h, v);
  const int base = count_disjoint_crossings(h, v);
  for (int k = 0; k < 20; ++k) {
    const int r = static_cast<int>(rng.below(12));
    const int c = static_cast<int>(rng.below(16));
    std::vector<std::vector<std::uint8_t>> h2 = h;
    h2[r][c] = 1;
    CHECK(count_disjoint_crossings(h2, v) >= base);
    h2[r][c] = 0;
    CHECK(count_disjoint_crossings(h2, v) <= base);
  }
}

TEST_CASE("crossing count validates band shapes") {
  std::vector<std::vector<std::uint8_t>> h(4,
                                           std::vector<std::uint8_t>(5, 1));
  std::vector<std::vector<std::uint8_t>> v_bad(3,
                                               std::vector<std::uint8_t>(5, 1));
  CHECK_THROWS_AS(count_disjoint_crossings(h, v_bad), ConfigError);
  std::vector<std::vector<std::uint8_t>> v_short(2,
                                                 std::vector<std::uint8_t>(6, 1));
  CHECK_THROWS_AS(count_disjoint_crossings(h, v_short), ConfigError);
}

TEST_CASE("a nearly open band almost surely has a crossing") {
  SmallRng rng(4242);
  int with_crossing = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    std::vector<std::vector<std::uint8_t>> h, v;
    random_band(rng, 10, 60, 0.95, h, v);
    if (count_disjoint_crossings(h, v) >= 1) ++with_crossing;
  }
  CHECK(with_crossing >= static_cast<int>(0.95 * trials));
}

TEST_CASE("extracted highways are structurally valid") {
  NetworkInstance inst;
  // varsigma = 1 gives open probability 1 - 1/e: a regime where max-flow
  // genuinely limits the crossing count.
  LatticeSystem lat = make_lattice(20000.0, 41, 1.0, inst);
  mark_open_closed(lat);
  const HighwaySystem hw = extract_highways(lat);
  CHECK(hw.band_rows ==
        static_cast<int>(std::floor(2.0 * std::log(lat.xi))));
  REQUIRE(!hw.horizontal.empty());
  REQUIRE(!hw.vertical.empty());

  long seen_h = 0, seen_v = 0;
  for (const auto* side : {&hw.horizontal, &hw.vertical}) {
    int expected_row0 = 0;
    for (const BandHighways& band : *side) {
      const BandSpec& spec = band.spec;
      CHECK(spec.row0 == expected_row0);
      expected_row0 += spec.rows;
      CHECK(static_cast<int>(band.paths.size()) == band.max_flow);
      (spec.horizontal ? seen_h : seen_v) +=
          static_cast<long>(band.paths.size());

      std::set<std::tuple<int, int, int>> used;
      for (const HighwayPath& path : band.paths) {
        REQUIRE(!path.verts.empty());
        REQUIRE(path.edges.size() == path.verts.size() - 1);
        REQUIRE(path.cells.size() == path.edges.size());
        REQUIRE(path.relays.size() == path.edges.size());
        // Crossing endpoints touch both sides of the square.
        const auto [i0, j0] = path.verts.front();
        const auto [i1, j1] = path.verts.back();
        if (spec.horizontal) {
          CHECK(i0 == 0);
          CHECK(i1 == lat.dim);
        } else {
          CHECK(j0 == 0);
          CHECK(j1 == lat.dim);
        }
        for (std::size_t k = 0; k < path.edges.size(); ++k) {
          const EdgeRef e = path.edges[k];
          CHECK(lat.edge_open(e));
          CHECK(lat.cell_of_edge(e) == path.cells[k]);
          CHECK(path.relays[k] == lat.representative(path.cells[k]));
          CHECK(path.relays[k] >= 0);
          // Band discipline: crossing bonds stay on band rows, connectors
          // strictly inside the band.
          const int across = spec.horizontal ? e.J : e.I;
          const bool crossing = spec.horizontal ? (e.o == Orient::H)
                                                : (e.o == Orient::V);
          if (crossing) {
            CHECK(across >= spec.row0);
            CHECK(across < spec.row0 + spec.rows);
          } else {
            CHECK(across >= spec.row0);
            CHECK(across + 1 < spec.row0 + spec.rows);
          }
          // Edge-disjoint across all paths of the band.
          const auto key = std::make_tuple(static_cast<int>(e.o), e.I, e.J);
          CHECK(used.insert(key).second);
          // Consecutive vertices are lattice-adjacent.
          const auto [ia, ja] = path.verts[k];
          const auto [ib, jb] = path.verts[k + 1];
          CHECK(std::abs(ia - ib) + std::abs(ja - jb) == 1);
        }
      }
    }
    CHECK(expected_row0 == lat.dim + 1);
  }
  CHECK(hw.total_paths(true) == seen_h);
  CHECK(hw.total_paths(false) == seen_v);
  CHECK(seen_h > 0);
  CHECK(seen_v > 0);
}

TEST_CASE("guaranteed crossing counts and admissible eta") {
  CHECK(prop1_path_count_bound(1e6, 1.0, 0.0, 3.0, 2.0, 0.5) ==
        doctest::Approx(6.561181688702164).epsilon(1e-12));
  CHECK(prop1_eta_max(2.0, 0.0, 1e6, 3.0, 2.0) ==
        doctest::Approx(0.30206013269298626).epsilon(1e-12));
  // Larger power enlarges the admissible eta ceiling.
  CHECK(prop1_eta_max(2.0, 0.6, 1e6, 3.0, 2.0) >
        prop1_eta_max(2.0, 0.0, 1e6, 3.0, 2.0));
  CHECK(prop1_total_highway_count(1e6, 1.0, 0.0, 3.0, 0.5) ==
        doctest::Approx(353.55339059327378).epsilon(1e-12));
  CHECK_THROWS_AS(prop1_path_count_bound(1e6, 1.0, 0.0, 3.0, 2.0, 0.0),
                  ConfigError);
  CHECK_THROWS_AS(prop1_path_count_bound(1e6, 1.0, 0.0, 3.0, 2.0, 1.1),
                  ConfigError);
}

TEST_CASE("crossing failure union bound") {
  CHECK(lemma3_crossing_failure_bound(0.99, 0.9, 0.3, 100.0, 10.0) ==
        doctest::Approx(1.04792292).epsilon(1e-9));
  // The bound shrinks as the rectangle gets longer.
  CHECK(lemma3_crossing_failure_bound(0.99, 0.9, 0.3, 100.0, 20.0) <
        lemma3_crossing_failure_bound(0.99, 0.9, 0.3, 100.0, 10.0));
  CHECK_THROWS_AS(lemma3_crossing_failure_bound(0.9, 0.95, 0.3, 100.0, 10.0),
                  DomainError);
  CHECK_THROWS_AS(lemma3_crossing_failure_bound(0.99, 0.9, 0.0, 100.0, 10.0),
                  DomainError);
}
