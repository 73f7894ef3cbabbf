#include "isac/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "isac/errors.hpp"
#include "isac/lattice.hpp"

namespace isac {

SlopeFit fit_scaling_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw ConfigError("slope fit needs matching x/y lengths");
  }
  if (x.size() < 3) throw ConfigError("slope fit needs at least 3 points");
  const int n = static_cast<int>(x.size());
  Eigen::VectorXd lx(n), ly(n);
  for (int k = 0; k < n; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw DomainError("slope fit requires positive values");
    }
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  const double mx = lx.mean();
  const double my = ly.mean();
  const Eigen::VectorXd dx = lx.array() - mx;
  const Eigen::VectorXd dy = ly.array() - my;
  const double sxx = dx.squaredNorm();
  if (!(sxx > 0.0)) throw DomainError("slope fit requires distinct sizes");
  SlopeFit fit;
  fit.points = n;
  fit.slope = dx.dot(dy) / sxx;
  fit.intercept = my - fit.slope * mx;
  const Eigen::VectorXd resid = dy - fit.slope * dx;
  const double s2 =
      n > 2 ? resid.squaredNorm() / static_cast<double>(n - 2) : 0.0;
  fit.stderr_slope = std::sqrt(s2 / sxx);
  return fit;
}

double throughput_draining(double min_rate, int M_drain, int max_occupancy) {
  if (M_drain < 1) throw ConfigError("M_drain must be positive");
  if (max_occupancy < 1) throw ConfigError("occupancy must be at least 1");
  if (!(min_rate >= 0.0)) throw ConfigError("rate must be nonnegative");
  return min_rate /
         (static_cast<double>(M_drain) * M_drain * max_occupancy);
}

double throughput_highway(double min_rate, double varsigma, double f,
                          double alpha_c, int M, double D) {
  if (!(varsigma > 0.0) || !(f > 0.0)) {
    throw ConfigError("varsigma and f must be positive");
  }
  if (M < 1) throw ConfigError("M must be positive");
  if (!(D >= 1.0)) throw ConfigError("hop count must be at least 1");
  if (!(min_rate >= 0.0)) throw ConfigError("rate must be nonnegative");
  return min_rate / (varsigma * varsigma * std::pow(f, 2.0 / alpha_c) *
                     static_cast<double>(M) * M * D);
}

SensingStats sensing_distance_stats(std::vector<double> distances) {
  if (distances.empty()) {
    throw DomainError("sensing statistics need at least one distance");
  }
  SensingStats s;
  s.min = *std::min_element(distances.begin(), distances.end());
  s.p5 = percentile(distances, 5.0);
  s.median = percentile(std::move(distances), 50.0);
  return s;
}

double sensing_frequency_tdm(long node_count) {
  if (node_count < 1) throw ConfigError("node count must be positive");
  return 1.0 / static_cast<double>(node_count);
}

double occupancy_bound_xprime(double n, double varsigma, double gamma,
                              double alpha_c, double delta) {
  if (!(n > 0.0)) throw ConfigError("n must be positive");
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(alpha_c > 2.0)) throw ConfigError("alpha_c must exceed 2");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  const double c = varsigma * std::pow(f_value(n, gamma), 1.0 / alpha_c);
  const double xi = std::sqrt(n) / (std::sqrt(2.0) * c);
  if (!(xi > 1.0)) throw DomainError("lattice too small for the bound");
  return std::sqrt(n) / c * std::pow(delta * std::log(xi), -alpha_c - 2.0);
}

double occupancy_bound(double n, double varsigma, double gamma,
                       double alpha_c, double delta) {
  const double xprime =
      occupancy_bound_xprime(n, varsigma, gamma, alpha_c, delta);
  if (!(xprime > 1.0)) {
    throw DomainError("delta too large: occupancy tail argument at most 1");
  }
  const double c = varsigma * std::pow(f_value(n, gamma), 1.0 / alpha_c);
  return c * c * xprime;
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) {
    throw DomainError("KS statistic needs nonempty samples");
  }
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t ia = 0, ib = 0;
  double d = 0.0;
  while (ia < a.size() && ib < b.size()) {
    const double v = std::min(a[ia], b[ib]);
    while (ia < a.size() && a[ia] <= v) ++ia;
    while (ib < b.size() && b[ib] <= v) ++ib;
    d = std::max(d, std::abs(static_cast<double>(ia) / na -
                             static_cast<double>(ib) / nb));
  }
  return d;
}

bool ks_same_distribution(const std::vector<double>& a,
                          const std::vector<double>& b, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0, 1)");
  }
  const double d = ks_statistic(a, b);
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  return d <= c * std::sqrt((na + nb) / (na * nb));
}

double percentile(std::vector<double> v, double p) {
  if (v.empty()) throw DomainError("percentile of an empty sample");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw ConfigError("percentile must lie in [0, 100]");
  }
  std::sort(v.begin(), v.end());
  const double idx = p / 100.0 * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(idx));
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double w = idx - static_cast<double>(lo);
  return v[lo] * (1.0 - w) + v[hi] * w;
}

}  // namespace isac
