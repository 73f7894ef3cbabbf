#pragma once
#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "isac/fading.hpp"
#include "isac/network.hpp"

namespace isac {

// Index of a tilted subsquare in the rotated frame u=(x+y)/sqrt2,
// v=(y-x)/sqrt2: i = floor(u/c), j = floor(v/c) with c the subsquare side.
struct CellId {
  int i = 0;
  int j = 0;
  bool operator==(const CellId& o) const { return i == o.i && j == o.j; }
};

enum class Orient : std::uint8_t { H, V };

// Bond of the percolation lattice. Vertices live at (I*a, J*a) in the
// original frame with a = sqrt(2)*c; the horizontal bond (I,J)-(I+1,J) and
// the vertical bond (I,J)-(I,J+1) are each the diagonal of one tilted
// subsquare, which gives the cell<->bond bijection below.
struct EdgeRef {
  Orient o = Orient::H;
  int I = 0;
  int J = 0;
  bool operator==(const EdgeRef& e) const {
    return o == e.o && I == e.I && J == e.J;
  }
};

struct LatticeParams {
  double n = 0.0;
  double varsigma = 1.0;
  double gamma = 0.0;
  double alpha_c = 3.0;
  double kappa = 2.0;
};

double f_value(double n, double gamma);

// P[cell open] = 1 - exp(-varsigma^2 * f(n)^(2/alpha_c)) for cells fully
// inside the deployment square.
double open_probability(double varsigma, double gamma, double n,
                        double alpha_c);

class LatticeSystem {
 public:
  // Geometry.
  double n = 0.0;
  double side = 0.0;       // sqrt(n)
  double cell_side = 0.0;  // c = varsigma * f^(1/alpha_c)
  double spacing = 0.0;    // a = sqrt(2) * c (bond length)
  double xi = 0.0;         // side / spacing (real-valued)
  int dim = 0;             // floor(xi): vertices (I,J), 0 <= I,J <= dim
  LatticeParams params;

  // Subsquare index window (covers every point of the square).
  int i_count = 0;  // i in [0, i_count)
  int j_min = 0;    // j in [j_min, j_min + j_count)
  int j_count = 0;

  // Occupancy in CSR layout over flattened cell indices.
  std::vector<std::int32_t> cell_start;  // size i_count*j_count + 1
  std::vector<std::int32_t> cell_nodes;  // node ids grouped by cell
  std::vector<std::int32_t> cell_rep;    // node nearest cell center, or -1
  std::vector<std::uint8_t> cell_interior;

  // Bond status maps, filled by mark_open_closed / apply_fading_gate.
  // h_open[J * dim + I] for H bonds (0<=I<dim, 0<=J<=dim);
  // v_open[J * (dim+1) + I] for V bonds (0<=I<=dim, 0<=J<dim).
  std::vector<std::uint8_t> h_open, v_open;

  // ---- Index helpers ----------------------------------------------------
  int flat(CellId c) const {
    return (c.i) * j_count + (c.j - j_min);
  }
  bool in_window(CellId c) const {
    return c.i >= 0 && c.i < i_count && c.j >= j_min &&
           c.j < j_min + j_count;
  }
  CellId cell_of_point(double x, double y) const;
  Eigen::Vector2d cell_center(CellId c) const;  // original frame
  bool interior(CellId c) const {
    return in_window(c) && cell_interior[flat(c)] != 0;
  }
  int occupancy(CellId c) const {
    if (!in_window(c)) return 0;
    const int f = flat(c);
    return cell_start[f + 1] - cell_start[f];
  }
  int representative(CellId c) const {
    return in_window(c) ? cell_rep[flat(c)] : -1;
  }

  // Cell <-> bond bijection. Cells whose bond falls outside the vertex grid
  // map to lattice_valid == false.
  EdgeRef edge_of_cell(CellId c) const;
  CellId cell_of_edge(EdgeRef e) const;
  bool edge_in_lattice(EdgeRef e) const {
    if (e.o == Orient::H) {
      return e.I >= 0 && e.I < dim && e.J >= 0 && e.J <= dim;
    }
    return e.I >= 0 && e.I <= dim && e.J >= 0 && e.J < dim;
  }
  bool edge_open(EdgeRef e) const {
    if (!edge_in_lattice(e)) return false;
    return (e.o == Orient::H ? h_open[e.J * dim + e.I]
                             : v_open[e.J * (dim + 1) + e.I]) != 0;
  }
  void set_edge_open(EdgeRef e, bool open) {
    if (!edge_in_lattice(e)) return;
    (e.o == Orient::H ? h_open[e.J * dim + e.I]
                      : v_open[e.J * (dim + 1) + e.I]) = open ? 1 : 0;
  }

  // The six cells whose bonds share an endpoint with this cell's bond.
  // Returns the count written into out (cells outside the lattice skipped).
  int connected_neighbors(CellId c, CellId out[6]) const;
  // The three neighbors at the forward endpoint (right vertex for H bonds,
  // top vertex for V bonds).
  int forward_neighbors(CellId c, CellId out[3]) const;

  double open_fraction_interior() const;  // over interior cells
  int max_occupancy() const;
  long interior_cell_count() const;
  long occupied_interior_count() const;
};

// Bin nodes into tilted subsquares, pick per-cell representatives (node
// nearest the cell center, ties to the lowest id), flag truncated boundary
// cells as exterior. Throws ConfigError when the lattice degenerates
// (fewer than one full bond row/column or band height below one row).
LatticeSystem partition_cells(const NetworkInstance& inst,
                              const LatticeParams& params);

// Bond open <=> its cell is fully interior and contains at least one node.
void mark_open_closed(LatticeSystem& lat);

struct FadingGateStats {
  long closed_empty = 0;
  long closed_gain = 0;
  long closed_interference = 0;
  double open_fraction = 0.0;  // over interior cells
};

// Fading-aware openness: a cell is open iff it is occupied, each of its
// three forward-neighbor representative gains clears g_tau, and the
// schedule-consistent worst-case interference at each of its six connected
// neighbors stays below I_tau. gate_rings truncates the interferer ring sum
// (0 = exhaustive). Reduces bit-exactly to mark_open_closed when
// g_tau <= 0 and I_tau = +infinity.
FadingGateStats apply_fading_gate(LatticeSystem& lat,
                                  const NetworkInstance& inst,
                                  const FadingField& field, int M,
                                  double g_tau, double I_tau, int gate_rings,
                                  double power, double alpha_c);

}  // namespace isac
