#pragma once
#include <Eigen/Dense>
#include <vector>

#include "isac/fading.hpp"

namespace isac {

// Far-field power path loss d^(-alpha). Distances below 1 are outside the
// model's domain and raise DomainError (the protocol geometry never
// produces them under valid configurations).
double path_loss_gain(double distance, double alpha);

// Communication rate log2(1 + P*g*d^(-alpha_c) / (N0 + I)).
double comm_rate(double power, double distance, double alpha_c, double gain,
                 double noise, double interference);

// Maximum range at which the sensing SINR still clears beta_s:
// d = beta_s^(-1/alpha_s) * (P * sigma0^2 / (N0 + I))^(1/alpha_s).
// The echo gain is 1 regardless of the fading model (round-trip reciprocity).
double sensing_distance(double power, double sigma0, double beta_s,
                        double alpha_s, double noise, double interference);

// Brute-force aggregate interference at a receiver position: the direct sum
// of P * g_i * d_i^(-alpha_c) over all active transmitters. This is the
// measurement-side oracle all bound checks compare against.
double aggregate_interference(const Eigen::Vector2d& receiver,
                              const Eigen::Matrix2Xd& transmitters,
                              double power, double alpha_c,
                              const std::vector<double>* gains = nullptr);

// Value and rigorous absolute error bound for a truncated series.
struct SeriesSum {
  double value = 0.0;
  double abs_error = 0.0;
};

// Sum_{l>=1} l / (l - margin/M)^alpha_c, evaluated by partial summation
// plus an integral sandwich on the tail. Requires alpha_c > 2 (divergent
// otherwise) and M > margin >= 0. rel_tol is a target; the achieved bound
// is reported. margin is the receiver's worst-case cell offset plus one:
// ring-l interferers sit at least (l*M - margin) cells away.
SeriesSum interference_layer_series_margin(double alpha_c, double M,
                                           double margin,
                                           double rel_tol = 1e-10,
                                           long max_terms = 3'000'000);

// margin = 2 case: the receiver is in a cell adjacent to the transmitter's.
SeriesSum interference_layer_series(double alpha_c, double M,
                                    double rel_tol = 1e-10,
                                    long max_terms = 3'000'000);

// Worst-case aggregate interference at a schedule-compliant receiver:
// power_ratio * (8 / (varsigma*M)^alpha_c) * layer series, where
// power_ratio is P/f (1 under the default power scaling).
double interference_layer_bound_margin(double varsigma, double M,
                                       double alpha_c, double power_ratio,
                                       double margin, double rel_tol = 1e-10);

// margin = 2 case (highway relay receivers).
double interference_layer_bound(double varsigma, double M, double alpha_c,
                                double power_ratio, double rel_tol = 1e-10);

// ---- Fading-threshold analytics ----------------------------------------

// Per-link pass probability P[g >= g_tau] for the configured model
// (closed form; exponential model: exp(-g_tau)).
double gain_pass_probability(const FadingSpec& spec, double g_tau);

// Markov lower bound (1 - E[I]/I_tau)^6 on the probability that all six
// neighbor-facing interference constraints hold; E[I] is the layer-bound
// mean. Returns 0 if I_tau <= E[I].
double interference_pass_lower_bound(double mean_interference, double I_tau);

// Feasibility of the fading gate thresholds: (P_g)^3 * P_I must exceed
// (1 - 2*exp(-varsigma^2)) / (1 - exp(-varsigma^2))^2.
struct ThresholdFeasibility {
  bool feasible = false;
  double product = 0.0;   // (P_g)^3 * P_I lower bound
  double threshold = 0.0; // RHS of the comparison
  double p_gain = 0.0;
  double p_interference = 0.0;
  double mean_interference = 0.0;
};
ThresholdFeasibility threshold_feasible(const FadingSpec& spec, double g_tau,
                                        double I_tau, double varsigma,
                                        double M, double alpha_c);

// Logarithmic whole-highway interference envelope zeta * log(n / f^(2/alpha_c))
// plus the derived constant zeta' and its validity condition q1 * zeta' > 2.
struct EnvelopeCheck {
  double envelope = 0.0;     // zeta * log(n / f^(2/alpha_c))
  double zeta_prime = 0.0;   // zeta / (varsigma^-alpha_c * 8/M^alpha_c * series)
  bool decay_condition = false;  // q1 * zeta' > 2
};
EnvelopeCheck fading_interference_envelope(double n, double gamma,
                                           double alpha_c, double varsigma,
                                           double M, double zeta, double q1);

// Probability that the best of h candidate entry gains clears g_tau under
// exponential fading: 1 - (1 - exp(-g_tau))^h.
double entry_diversity_success(double g_tau, double h);

}  // namespace isac
