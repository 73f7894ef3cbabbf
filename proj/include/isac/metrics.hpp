#pragma once
#include <Eigen/Dense>
#include <vector>

namespace isac {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double stderr_slope = 0.0;
  int points = 0;
};

// OLS fit of log(y) against log(x). Requires >= 3 points, x,y > 0.
SlopeFit fit_scaling_slope(const std::vector<double>& x,
                           const std::vector<double>& y);

// Draining/delivering phase per-node throughput: the slowest one-hop rate
// divided by the slot-reuse factor and the worst realized cell sharing.
double throughput_draining(double min_rate, int M_drain, int max_occupancy);

// Highway phase per-node throughput:
// min-hop rate / (varsigma^2 * f^(2/alpha_c) * M^2 * D).
double throughput_highway(double min_rate, double varsigma, double f,
                          double alpha_c, int M, double D);

struct SensingStats {
  double min = 0.0;
  double p5 = 0.0;
  double median = 0.0;
};
SensingStats sensing_distance_stats(std::vector<double> distances);

// Average over nodes of (slots transmitting)/(total slots), given each
// node's share of its cell slot. Pure TDM over K nodes gives 1/K.
double sensing_frequency_tdm(long node_count);

// High-probability per-cell occupancy ceiling
// varsigma * f^(1/alpha_c) * sqrt(n) * (delta * log(xi))^(-alpha_c-2),
// with xi = sqrt(n)/(sqrt(2)*varsigma*f^(1/alpha_c)). Valid only while the
// rescaled argument x' stays above 1 (checked via lemma4 x-prime).
double occupancy_bound(double n, double varsigma, double gamma,
                       double alpha_c, double delta);
double occupancy_bound_xprime(double n, double varsigma, double gamma,
                              double alpha_c, double delta);

// Two-sample Kolmogorov-Smirnov statistic and the alpha = 0.01 decision.
double ks_statistic(std::vector<double> a, std::vector<double> b);
bool ks_same_distribution(const std::vector<double>& a,
                          const std::vector<double>& b,
                          double alpha = 0.01);

double percentile(std::vector<double> v, double p);  // p in [0,100]

}  // namespace isac
