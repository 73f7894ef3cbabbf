#include "isac/channel.hpp"

#include <cmath>

#include "isac/errors.hpp"

namespace isac {

double path_loss_gain(double distance, double alpha) {
  if (!(distance >= 1.0)) {
    throw DomainError("path loss undefined below unit distance: d = " +
                      std::to_string(distance));
  }
  return std::pow(distance, -alpha);
}

double comm_rate(double power, double distance, double alpha_c, double gain,
                 double noise, double interference) {
  if (!(power > 0.0)) throw ConfigError("transmit power must be positive");
  if (!(noise > 0.0)) throw ConfigError("noise power must be positive");
  if (gain < 0.0) throw DomainError("negative fading gain");
  if (interference < 0.0) throw DomainError("negative interference");
  const double signal = power * gain * path_loss_gain(distance, alpha_c);
  return std::log2(1.0 + signal / (noise + interference));
}

double sensing_distance(double power, double sigma0, double beta_s,
                        double alpha_s, double noise, double interference) {
  if (!(power > 0.0)) throw ConfigError("transmit power must be positive");
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  if (!(beta_s > 0.0)) throw ConfigError("beta_s must be positive");
  if (!(alpha_s > 0.0)) throw ConfigError("alpha_s must be positive");
  if (!(noise > 0.0)) throw ConfigError("noise power must be positive");
  if (interference < 0.0) throw DomainError("negative interference");
  return std::pow(beta_s, -1.0 / alpha_s) *
         std::pow(power * sigma0 * sigma0 / (noise + interference),
                  1.0 / alpha_s);
}

double aggregate_interference(const Eigen::Vector2d& receiver,
                              const Eigen::Matrix2Xd& transmitters,
                              double power, double alpha_c,
                              const std::vector<double>* gains) {
  if (gains != nullptr &&
      static_cast<Eigen::Index>(gains->size()) != transmitters.cols()) {
    throw ConfigError("gain vector length does not match transmitter count");
  }
  double total = 0.0;
  for (Eigen::Index c = 0; c < transmitters.cols(); ++c) {
    const double d = (transmitters.col(c) - receiver).norm();
    const double g = gains != nullptr ? (*gains)[c] : 1.0;
    total += power * g * path_loss_gain(d, alpha_c);
  }
  return total;
}

SeriesSum interference_layer_series_margin(double alpha_c, double M,
                                           double margin, double rel_tol,
                                           long max_terms) {
  if (!(alpha_c > 2.0)) {
    throw DomainError("layer series diverges for alpha_c <= 2");
  }
  if (!(margin >= 0.0 && M > margin)) {
    throw ConfigError("layer series requires M > margin >= 0");
  }
  const double s = margin / M;
  // Tail integral of x * (x - s)^(-alpha) from L to infinity.
  const auto tail_integral = [&](double L) {
    const double t = L - s;
    return std::pow(t, 2.0 - alpha_c) / (alpha_c - 2.0) +
           s * std::pow(t, 1.0 - alpha_c) / (alpha_c - 1.0);
  };
  double partial = 0.0;
  long l = 1;
  long block = 64;
  for (;;) {
    const long stop = std::min(l + block - 1, max_terms);
    for (; l <= stop; ++l) {
      const double dl = static_cast<double>(l);
      partial += dl * std::pow(dl - s, -alpha_c);
    }
    // Sandwich: integral over [L+1, inf) <= tail <= integral over [L, inf)
    // once the summand is decreasing (true for l >= 2 here).
    const double L = static_cast<double>(l - 1);
    const double hi = tail_integral(L);
    const double lo = tail_integral(L + 1.0);
    const double mid = 0.5 * (hi + lo);
    const double half_width = 0.5 * (hi - lo);
    const double value = partial + mid;
    if (half_width <= rel_tol * value || l > max_terms) {
      return SeriesSum{value, half_width};
    }
    block *= 2;
  }
}

SeriesSum interference_layer_series(double alpha_c, double M, double rel_tol,
                                    long max_terms) {
  if (!(M > 2.0)) {
    throw ConfigError("layer series requires M > 2");
  }
  return interference_layer_series_margin(alpha_c, M, 2.0, rel_tol, max_terms);
}

double interference_layer_bound_margin(double varsigma, double M,
                                       double alpha_c, double power_ratio,
                                       double margin, double rel_tol) {
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  const SeriesSum s =
      interference_layer_series_margin(alpha_c, M, margin, rel_tol);
  return power_ratio * 8.0 * std::pow(varsigma * M, -alpha_c) * s.value;
}

double interference_layer_bound(double varsigma, double M, double alpha_c,
                                double power_ratio, double rel_tol) {
  if (!(M > 2.0)) {
    throw ConfigError("layer series requires M > 2");
  }
  return interference_layer_bound_margin(varsigma, M, alpha_c, power_ratio,
                                         2.0, rel_tol);
}

// Regularized upper incomplete gamma Q(a, x) via series / continued
// fraction (Numerical Recipes style); used for Nakagami tail closed form.
namespace {
double gamma_q(double a, double x) {
  if (x < 0.0 || a <= 0.0) throw DomainError("gamma_q domain");
  if (x == 0.0) return 1.0;
  const double gln = std::lgamma(a);
  if (x < a + 1.0) {
    // Series for P(a,x), return 1-P.
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
      ap += 1.0;
      del *= x / ap;
      sum += del;
      if (std::fabs(del) < std::fabs(sum) * 1e-15) break;
    }
    const double p = sum * std::exp(-x + a * std::log(x) - gln);
    return 1.0 - p;
  }
  // Continued fraction for Q directly.
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - gln) * h;
}
}  // namespace

double gain_pass_probability(const FadingSpec& spec, double g_tau) {
  if (g_tau < 0.0) throw ConfigError("g_tau must be >= 0");
  switch (spec.model) {
    case FadingModel::None:
      return g_tau <= 1.0 ? 1.0 : 0.0;
    case FadingModel::Exponential:
      return std::exp(-g_tau);
    case FadingModel::Nakagami:
      return gamma_q(spec.m, spec.m * g_tau);
    case FadingModel::Rician: {
      // Marcum-Q free lower bound is awkward in closed form; integrate the
      // density numerically on a fixed grid (smooth, fast-decaying).
      const double K = spec.K;
      const double scale = 1.0 + K;
      // pdf(x) = (1+K) e^{-K-(1+K)x} I0(2 sqrt(K(1+K)x))
      auto pdf = [&](double x) {
        const double arg = 2.0 * std::sqrt(K * scale * x);
        return scale * std::exp(-K - scale * x) * std::cyl_bessel_i(0.0, arg);
      };
      if (g_tau == 0.0) return 1.0;
      // CDF on [0, g_tau] by Simpson with 2048 panels.
      const int panels = 2048;
      const double h = g_tau / panels;
      double acc = pdf(0.0) + pdf(g_tau);
      for (int i = 1; i < panels; ++i) {
        acc += pdf(i * h) * (i % 2 == 1 ? 4.0 : 2.0);
      }
      const double cdf = acc * h / 3.0;
      return std::min(1.0, std::max(0.0, 1.0 - cdf));
    }
  }
  return 1.0;
}

double interference_pass_lower_bound(double mean_interference, double I_tau) {
  if (!(I_tau > 0.0)) throw ConfigError("I_tau must be positive");
  if (mean_interference < 0.0) throw DomainError("negative mean interference");
  if (mean_interference >= I_tau) return 0.0;
  const double p = 1.0 - mean_interference / I_tau;
  return std::pow(p, 6.0);
}

ThresholdFeasibility threshold_feasible(const FadingSpec& spec, double g_tau,
                                        double I_tau, double varsigma,
                                        double M, double alpha_c) {
  ThresholdFeasibility out;
  const double t = varsigma * varsigma;
  out.threshold =
      (1.0 - 2.0 * std::exp(-t)) / std::pow(1.0 - std::exp(-t), 2.0);
  out.p_gain = gain_pass_probability(spec, g_tau);
  out.mean_interference = interference_layer_bound(varsigma, M, alpha_c, 1.0);
  out.p_interference =
      interference_pass_lower_bound(out.mean_interference, I_tau);
  out.product = std::pow(out.p_gain, 3.0) * out.p_interference;
  out.feasible = out.product > out.threshold;
  return out;
}

EnvelopeCheck fading_interference_envelope(double n, double gamma,
                                           double alpha_c, double varsigma,
                                           double M, double zeta, double q1) {
  if (!(zeta > 0.0)) throw ConfigError("zeta must be positive");
  EnvelopeCheck out;
  const double f = std::pow(n, gamma);
  const double arg = n / std::pow(f, 2.0 / alpha_c);
  if (!(arg > 1.0)) {
    throw DomainError("envelope log argument must exceed 1");
  }
  out.envelope = zeta * std::log(arg);
  const double series = interference_layer_series(alpha_c, M).value;
  const double denom =
      std::pow(varsigma, -alpha_c) * 8.0 * std::pow(M, -alpha_c) * series;
  out.zeta_prime = zeta / denom;
  out.decay_condition = q1 * out.zeta_prime > 2.0;
  return out;
}

double entry_diversity_success(double g_tau, double h) {
  if (g_tau < 0.0) throw ConfigError("g_tau must be >= 0");
  if (!(h >= 1.0)) throw ConfigError("candidate count must be >= 1");
  return 1.0 - std::pow(1.0 - std::exp(-g_tau), h);
}

}  // namespace isac
