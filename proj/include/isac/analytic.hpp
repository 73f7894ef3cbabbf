#pragma once
#include <string>
#include <vector>

namespace isac {

// Scaling exponents are powers of n; a flag records an extra Theta(log n)
// factor where one exists (the power alone understates the order there).
struct OrderExponents {
  double lambda_exponent = 0.0;
  bool lambda_has_log = false;
  double d_exponent = 0.0;
};

// Percolation-highway scheme: lambda = Theta(n^(-gamma/alpha_c - 1/2)),
// d = Theta(n^(gamma/alpha_s)), for 0 <= gamma <= alpha_c/2.
OrderExponents theorem1_exponents(double gamma, double alpha_c,
                                  double alpha_s);

// Pure TDM benchmark. lambda: n^(gamma - 1 - alpha_c/2) for
// gamma < alpha_c/2; n^(-1) at equality; n^(-1) * log f above (log flag).
// d: n^(gamma/alpha_s) in every regime.
struct TdmOrder {
  double lambda_exponent = 0.0;
  bool lambda_has_log = false;
  double d_exponent = 0.0;
  std::string regime;  // "subcritical" | "critical" | "supercritical"
};
TdmOrder tdm_exponents(double gamma, double alpha_c, double alpha_s);

// Order evaluation at finite n with constants set to 1 (log factors kept):
// n^(gamma-1-alpha_c/2) below the critical power, 1/n at it, gamma*log(n)/n
// above it.
double tdm_lambda_value(double n, double gamma, double alpha_c);

// TDM with transmit power growing as e^(sqrt n): the rate grows like
// sqrt(n), so lambda = Theta(n^(-1/2)) regardless of alpha_c.
double tdm_exponential_power_lambda_exponent();

// Alternative single-scale scheme profile: P = f1 = n^a1, subsquare side
// grows as f2 = n^a2, slot count as f3 = n^a3.
struct ScalingProfile {
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;
};

struct AlternativeOrder {
  char regime = '1';           // '1': f1 = omega((f2 f3)^alpha_c); '2': O()
  double lambda_exponent = 0.0;  // power part of the Theta
  bool lambda_has_log = false;
  double lambda_strict_exponent = 0.0;  // lambda = o(n^this)
  double d_exponent = 0.0;
};

// Validates a1 > 0, 0 <= a2 < min(a1/alpha_c, 1/2), 0 <= a3 < 1/2 and the
// slab-count geometry constraint a2 + a3 <= 1/2; classifies the regime by
// a1 vs alpha_c*(a2+a3) (boundary inclusive to regime '2') and returns the
// order pair.
AlternativeOrder alternative_exponents(const ScalingProfile& profile,
                                       double alpha_c, double alpha_s);

// True when some percolation-highway operating point (gamma in
// [0, alpha_c/2]) weakly dominates the given order pair: at least the
// sensing exponent and at least the throughput order (log factors break
// ties against the dominated side only when powers are equal).
bool dominated_by_theorem1(const AlternativeOrder& alt, double alpha_c,
                           double alpha_s);

// ---- Converse ----------------------------------------------------------

// Delta = beta_c^(1/alpha_c) - 1; requires beta_c > 1.
double converse_delta(double beta_c, double alpha_c);

// Sphere-packing cap 16*n / (Delta^2 * r_n^2) on simultaneous
// transmissions at link range r_n.
double converse_max_transmissions(double n, double delta, double r_n);

// Throughput cap 16*W / (Delta^2 * r_n * L_bar) at bandwidth W and mean
// source-destination distance L_bar.
double converse_lambda_upper(double W, double delta, double r_n,
                             double L_bar);

// Order exponents of the converse at r_n = n^(r_exponent): lambda order
// -(r_exponent + 1/2), sensing order r_exponent * alpha_c / alpha_s.
OrderExponents converse_exponents(double r_exponent, double alpha_c,
                                  double alpha_s);

// Converse pair at a concrete range r_n: throughput cap
// 16*W/(Delta^2 * r_n * L_bar) and sensing-distance cap r_n^(alpha_c/alpha_s).
// Validates the connectivity window c1*sqrt(log n) <= r_n <= c2*sqrt(n).
struct ConverseTradeoff {
  double lambda_upper = 0.0;
  double d_upper = 0.0;
};
ConverseTradeoff converse_tradeoff(double r_n, double n, double alpha_c,
                                   double alpha_s, double W, double beta_c,
                                   double L_bar, double c1, double c2);

// ---- Finite-n curve evaluation -----------------------------------------

struct CurvePoint {
  std::string scheme;  // "proposed" | "tdm" | "converse"
  double n = 0.0;
  double gamma = 0.0;
  double alpha_c = 0.0;
  double alpha_s = 0.0;
  double lambda_order = 0.0;  // order expression with constants set to 1
  double d_order = 0.0;
};

// Evaluates the order expressions at finite n with constants set to 1,
// retaining log factors, over the given gamma grid.
std::vector<CurvePoint> tradeoff_curve(double n,
                                       const std::vector<double>& gammas,
                                       double alpha_c, double alpha_s);

}  // namespace isac
