#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "isac/fading.hpp"

namespace isac {

// Full experiment configuration. Defaults form the out-of-the-box
// verification profile; every field can come from a key=value config file
// or a command-line override.
struct ExperimentConfig {
  // Geometry / propagation.
  double varsigma = 2.0;
  double kappa = 2.0;
  double eta = 0.3;    // guaranteed-crossing fraction used for sizing
  double delta = 0.3;  // occupancy-bound knob
  double alpha_c = 3.0;
  double alpha_s = 2.0;
  int M = 4;
  double N0 = 1.0;
  double sigma0 = 1.0;
  double beta_s = 1.0;
  double beta_c = 8.0;

  // Fading.
  std::string fading = "none";  // none|exponential|nakagami|rician
  double nakagami_m = 1.0;
  double rician_K = 1.0;
  double g_tau = 3e-5;
  double I_tau = 5000.0;
  int gate_rings = 8;
  int sub_slots = 6;  // fading highway phase sub-slot count

  // Audit constants. q0/q1/g0 describe the assumed gain tail
  // P[g > x] <= q0*exp(-q1*x); when left at the defaults they are replaced
  // by the chosen fading model's own tail parameters.
  double zeta = 3.0;
  double q0 = 1.0, q1 = 1.0, g0 = 0.0;
  double q2 = 0.0;  // 0 = derive 4/(varsigma^4 M^2) (receiver-count prefactor)
  double q3 = 0.0;  // 0 = derive -log(1 - P[g >= g_tau])

  // Converse-side constants.
  double W = 1.0;   // per-link rate constant in the range-cap model
  double c1 = 0.1;  // connectivity window lower constant
  double c2 = 2.0;  // connectivity window upper constant
  double unroutable_warn = 0.02;  // warn above this unroutable fraction

  // Experiment shape.
  std::vector<double> sizes = {1e4, 4e4, 1.6e5, 6.4e5};
  std::vector<double> gammas = {0.0, 0.3, 0.6};
  int replicates = 20;
  std::uint64_t seed = 42;
  int pair_sample = 2000;      // routed source sample per replicate
  int audit_receivers = 3000;  // exact-interference audit cap (0 = all)
  int threads = 1;
  std::string out_dir = "out";

  FadingSpec fading_spec() const;
  bool fading_enabled() const { return fading != "none"; }
  double q2_effective() const;
  double q3_effective() const;

  // Throws ConfigError on out-of-domain values or infeasible combinations
  // (gamma > alpha_c/2, M <= 2, alpha_c <= 2, infeasible fading gate, ...).
  void validate() const;
};

// key = value lines; '#' comments; keys match the field names above
// (sizes/gammas as comma-separated lists).
ExperimentConfig load_config(const std::string& path);
void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value);
std::string config_to_text(const ExperimentConfig& cfg);

}  // namespace isac
