#pragma once
#include <vector>

#include "isac/lattice.hpp"

namespace isac {

// M^2-phase spatial TDM over subsquares: cell (i,j) transmits in slot group
// (i mod M, j mod M). sub_slots subdivides each slot (6 in the fading
// highway phase so a cell can address each connected neighbor once).
struct SchedulePlan {
  int M = 0;
  int sub_slots = 1;

  int slots() const { return M * M; }
  int slot_of(CellId c) const {
    const int im = ((c.i % M) + M) % M;
    const int jm = ((c.j % M) + M) % M;
    return im + M * jm;
  }
};

// Validates M > 2 (the layer bound diverges at M <= 2) and sub_slots >= 1.
SchedulePlan build_schedule(int M, int sub_slots = 1);

// Draining/delivering phase reuse parameter: the smallest integer M > 2
// with M >= 2*(sqrt(2)*kappa*log(xi) + 1).
int draining_slot_parameter(double kappa, double xi);

// Occupied interior cells in the given slot group (the worst-case active
// set used by every interference audit).
std::vector<CellId> active_cells(const LatticeSystem& lat,
                                 const SchedulePlan& plan, int slot);

// Exhaustive same-group separation audit: every pair of distinct cells in
// one slot group is at least (M-1)*cell_side apart boundary-to-boundary
// (center spacing a multiple of M*cell_side on each rotated axis).
// Returns the minimum center distance found; throws InvariantViolation if
// the separation contract is broken.
double audit_schedule_separation(const LatticeSystem& lat,
                                 const SchedulePlan& plan);

}  // namespace isac
