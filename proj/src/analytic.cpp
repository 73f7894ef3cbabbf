#include "isac/analytic.hpp"

#include <algorithm>
#include <cmath>

#include "isac/errors.hpp"

namespace isac {

namespace {

void check_alphas(double alpha_c, double alpha_s) {
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(alpha_s > 0.0)) throw ConfigError("alpha_s must be positive");
}

}  // namespace

OrderExponents theorem1_exponents(double gamma, double alpha_c,
                                  double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  if (gamma < 0.0 || gamma > alpha_c / 2.0) {
    throw ConfigError("gamma must lie in [0, alpha_c/2]");
  }
  OrderExponents e;
  e.lambda_exponent = -(gamma / alpha_c + 0.5);
  e.lambda_has_log = false;
  e.d_exponent = gamma / alpha_s;
  return e;
}

TdmOrder tdm_exponents(double gamma, double alpha_c, double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  if (gamma < 0.0) throw ConfigError("gamma must be nonnegative");
  TdmOrder o;
  o.d_exponent = gamma / alpha_s;
  const double crit = alpha_c / 2.0;
  if (gamma < crit) {
    o.lambda_exponent = gamma - 1.0 - crit;
    o.lambda_has_log = false;
    o.regime = "subcritical";
  } else if (gamma == crit) {
    o.lambda_exponent = -1.0;
    o.lambda_has_log = false;
    o.regime = "critical";
  } else {
    o.lambda_exponent = -1.0;
    o.lambda_has_log = true;
    o.regime = "supercritical";
  }
  return o;
}

double tdm_lambda_value(double n, double gamma, double alpha_c) {
  if (!(n > 1.0)) throw ConfigError("n must exceed 1");
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (gamma < 0.0) throw ConfigError("gamma must be nonnegative");
  const double crit = alpha_c / 2.0;
  if (gamma < crit) return std::pow(n, gamma - 1.0 - crit);
  if (gamma == crit) return 1.0 / n;
  return gamma * std::log(n) / n;
}

double tdm_exponential_power_lambda_exponent() { return -0.5; }

AlternativeOrder alternative_exponents(const ScalingProfile& profile,
                                       double alpha_c, double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  const double a1 = profile.a1, a2 = profile.a2, a3 = profile.a3;
  if (!(a1 > 0.0)) throw ConfigError("a1 must be positive");
  if (!(a2 >= 0.0 && a2 < 0.5 && a2 < a1 / alpha_c)) {
    throw ConfigError("a2 must satisfy 0 <= a2 < min(a1/alpha_c, 1/2)");
  }
  if (!(a3 >= 0.0 && a3 < 0.5)) {
    throw ConfigError("a3 must satisfy 0 <= a3 < 1/2");
  }
  if (!(a2 + a3 <= 0.5)) {
    throw ConfigError(
        "a2 + a3 must not exceed 1/2 (cells cannot outgrow the square)");
  }
  AlternativeOrder out;
  out.lambda_exponent = -(a2 + 2.0 * a3 + 0.5);
  out.lambda_strict_exponent = -(a2 + a3 + 0.5);
  if (a2 + a3 < a1 / alpha_c) {
    out.regime = '1';
    // lambda = Theta(log f3 / (f2 f3^2 sqrt(n))): the log factor is a real
    // Theta(log n) only when f3 itself grows.
    out.lambda_has_log = a3 > 0.0;
  } else {
    out.regime = '2';
    // lambda = Theta(log(f1/f2^alpha_c) / (f2 f3^2 sqrt(n))); the argument
    // grows as a positive power of n (a1 > alpha_c*a2), so the log factor
    // is always present.
    out.lambda_has_log = true;
  }
  out.d_exponent = out.regime == '1' ? alpha_c * (a2 + a3) / alpha_s
                                     : a1 / alpha_s;
  return out;
}

bool dominated_by_theorem1(const AlternativeOrder& alt, double alpha_c,
                           double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  // Smallest gamma whose sensing exponent matches the target; larger gamma
  // only lowers the throughput exponent.
  const double gamma_star = alt.d_exponent * alpha_s;
  const double eps = 1e-12;
  if (gamma_star < -eps || gamma_star > alpha_c / 2.0 + eps) return false;
  const double lam_th = -(std::clamp(gamma_star, 0.0, alpha_c / 2.0) /
                              alpha_c +
                          0.5);
  if (lam_th > alt.lambda_exponent + eps) return true;
  if (lam_th < alt.lambda_exponent - eps) return false;
  // Equal powers: the highway order carries no log factor, so it only ties
  // when the alternative order has none either.
  return !alt.lambda_has_log;
}

double converse_delta(double beta_c, double alpha_c) {
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(beta_c > 1.0)) {
    throw ConfigError("beta_c must exceed 1 for a positive guard factor");
  }
  return std::pow(beta_c, 1.0 / alpha_c) - 1.0;
}

double converse_max_transmissions(double n, double delta, double r_n) {
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  if (!(delta > 0.0)) throw ConfigError("guard factor must be positive");
  if (!(r_n >= 1.0)) throw ConfigError("range must be at least 1");
  return 16.0 * n / (delta * delta * r_n * r_n);
}

double converse_lambda_upper(double W, double delta, double r_n,
                             double L_bar) {
  if (!(W > 0.0)) throw ConfigError("bandwidth must be positive");
  if (!(delta > 0.0)) throw ConfigError("guard factor must be positive");
  if (!(r_n >= 1.0)) throw ConfigError("range must be at least 1");
  if (!(L_bar > 0.0)) {
    throw ConfigError("mean source-destination distance must be positive");
  }
  return 16.0 * W / (delta * delta * r_n * L_bar);
}

OrderExponents converse_exponents(double r_exponent, double alpha_c,
                                  double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  if (r_exponent < 0.0) throw ConfigError("range exponent must be >= 0");
  OrderExponents e;
  e.lambda_exponent = -(r_exponent + 0.5);
  e.lambda_has_log = false;
  e.d_exponent = r_exponent * alpha_c / alpha_s;
  return e;
}

ConverseTradeoff converse_tradeoff(double r_n, double n, double alpha_c,
                                   double alpha_s, double W, double beta_c,
                                   double L_bar, double c1, double c2) {
  check_alphas(alpha_c, alpha_s);
  if (!(n > 1.0)) throw ConfigError("n must exceed 1");
  if (!(c1 >= 0.0) || !(c2 > 0.0)) {
    throw ConfigError("connectivity constants must be nonnegative");
  }
  const double lo = c1 * std::sqrt(std::log(n));
  const double hi = c2 * std::sqrt(n);
  if (!(r_n >= lo && r_n <= hi)) {
    throw DomainError("range outside the connectivity window");
  }
  const double delta = converse_delta(beta_c, alpha_c);
  ConverseTradeoff out;
  out.lambda_upper = 16.0 * W / (delta * delta * r_n * L_bar);
  out.d_upper = std::pow(r_n, alpha_c / alpha_s);
  return out;
}

std::vector<CurvePoint> tradeoff_curve(double n,
                                       const std::vector<double>& gammas,
                                       double alpha_c, double alpha_s) {
  check_alphas(alpha_c, alpha_s);
  if (!(n > 1.0)) throw ConfigError("n must exceed 1");
  std::vector<CurvePoint> out;
  out.reserve(gammas.size() * 2);
  for (const double g : gammas) {
    if (!(g > 0.0 && g <= 1.25)) {
      throw ConfigError("curve gamma grid must lie in (0, 1.25]");
    }
    if (g < alpha_c / 2.0) {
      const OrderExponents th = theorem1_exponents(g, alpha_c, alpha_s);
      CurvePoint p;
      p.scheme = "proposed";
      p.n = n;
      p.gamma = g;
      p.alpha_c = alpha_c;
      p.alpha_s = alpha_s;
      p.lambda_order = std::pow(n, th.lambda_exponent);
      p.d_order = std::pow(n, th.d_exponent);
      out.push_back(p);
    }
    const TdmOrder td = tdm_exponents(g, alpha_c, alpha_s);
    CurvePoint q;
    q.scheme = "tdm";
    q.n = n;
    q.gamma = g;
    q.alpha_c = alpha_c;
    q.alpha_s = alpha_s;
    q.lambda_order = tdm_lambda_value(n, g, alpha_c);
    q.d_order = std::pow(n, td.d_exponent);
    out.push_back(q);
  }
  return out;
}

}  // namespace isac
