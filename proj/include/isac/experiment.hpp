#pragma once
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "isac/config.hpp"
#include "isac/metrics.hpp"
#include "isac/network.hpp"
#include "isac/routing.hpp"

namespace isac {

// Everything measured on one replicate at one (n, gamma).
struct RunMetrics {
  double n = 0.0;
  double gamma = 0.0;
  int replicate = 0;
  std::uint64_t seed = 0;
  long nodes = 0;

  // Percolation.
  double open_fraction = 0.0;
  double open_prob_formula = 0.0;
  double xi = 0.0;
  int band_rows = 0;
  long paths_horizontal = 0;
  long paths_vertical = 0;
  double prop1_threshold = 0.0;  // eta * kappa * log(xi)
  double prop1_fraction = 0.0;   // complete bands meeting the threshold
  long complete_bands = 0;

  // Occupancy.
  int max_occupancy = 0;
  double occupancy_bound_value = 0.0;
  bool occupancy_ok = true;

  // Routing.
  double unroutable_fraction = 0.0;
  int pairs_routed = 0;
  double D_max = 0.0;
  double D_median = 0.0;
  double hop_len_max = 0.0;
  double hop_len_bound = 0.0;
  double drain_dist_max = 0.0;
  double deliver_dist_max = 0.0;
  double drain_dist_bound = 0.0;
  long entry_misses = 0;
  long exit_misses = 0;

  // Per-phase rates and throughput.
  double rate_min_drain = 0.0;
  double rate_min_highway = 0.0;
  double rate_min_deliver = 0.0;
  double lambda_drain = 0.0;
  double lambda_drain_conservative = 0.0;
  double lambda_highway = 0.0;
  double lambda_deliver = 0.0;
  int M_drain = 0;

  // Interference (communication receivers, highway phase).
  double interference_max = 0.0;
  double interference_mean = 0.0;
  double layer_bound = 0.0;
  long bound_violations = 0;
  long receivers_audited = 0;
  double interference_drain_max = 0.0;
  double interference_deliver_max = 0.0;

  // Sensing.
  double sense_min_highway = 0.0, sense_p5_highway = 0.0,
         sense_med_highway = 0.0;
  double sense_min_drain = 0.0, sense_p5_drain = 0.0, sense_med_drain = 0.0;
  double sense_interference_max = 0.0;
  double sense_freq_highway = 0.0;
  double sense_freq_drain = 0.0;

  // Schedules / converse.
  double min_separation = 0.0;
  double separation_floor = 0.0;  // (M-1) * cell side
  long max_active_per_slot = 0;
  long max_active_per_slot_drain = 0;
  double converse_cap = 0.0;       // with r_n = measured max hop length
  bool converse_ok = true;

  // Fading extras.
  double envelope_value = 0.0;     // zeta * log(n / f^(2/alpha_c))
  double envelope_exceed_fraction = 0.0;
  long gate_closed_gain = 0;
  long gate_closed_interference = 0;

  // Raw samples kept for distribution-level checks (draining vs
  // delivering symmetry).
  std::vector<double> drain_dists;
  std::vector<double> deliver_dists;
};

// Seed used for a given (n, gamma, replicate) cell of a sweep; exposed so
// external tools can rebuild the exact instance a run used.
std::uint64_t replicate_seed(const ExperimentConfig& cfg, double n,
                             double gamma, int replicate);

RunMetrics run_replicate(const ExperimentConfig& cfg, double n, double gamma,
                         int replicate);

struct GammaSlopes {
  double gamma = 0.0;
  SlopeFit lambda_highway;
  SlopeFit lambda_drain;
  SlopeFit lambda_drain_conservative;
  SlopeFit sense_min_highway;
  SlopeFit sense_freq_highway;
};

struct SweepReport {
  ExperimentConfig cfg;
  std::vector<RunMetrics> runs;
  std::vector<GammaSlopes> slopes;
};

SweepReport run_sweep(const ExperimentConfig& cfg);

// Machine-readable invariant ledger.
struct VerifyCheck {
  std::string name;
  bool pass = false;
  double value = 0.0;
  double reference = 0.0;
  std::string note;
};
struct VerifyReport {
  std::vector<VerifyCheck> checks;
  bool all_pass() const;
};

VerifyReport run_verify(const ExperimentConfig& cfg);

}  // namespace isac
