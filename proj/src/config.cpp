#include "isac/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "isac/channel.hpp"
#include "isac/errors.hpp"

namespace isac {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    double v = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not a number: '" + value +
                      "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    long v = std::stol(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    if (v < std::numeric_limits<int>::min() ||
        v > std::numeric_limits<int>::max())
      throw std::out_of_range(value);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key + "' is not an integer: '" + value +
                      "'");
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    unsigned long long v = std::stoull(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return static_cast<std::uint64_t>(v);
  } catch (const std::exception&) {
    throw ConfigError("value for '" + key +
                      "' is not an unsigned integer: '" + value + "'");
  }
}

std::vector<double> parse_list(const std::string& key,
                               const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(key, item));
  }
  if (out.empty())
    throw ConfigError("list for '" + key + "' is empty: '" + value + "'");
  return out;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_list(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += fmt(v[i]);
  }
  return out;
}

}  // namespace

FadingSpec ExperimentConfig::fading_spec() const {
  FadingModel model = fading_model_from_string(fading);
  FadingSpec spec;
  switch (model) {
    case FadingModel::None:
      spec = FadingSpec::none();
      break;
    case FadingModel::Exponential:
      spec = FadingSpec::exponential();
      break;
    case FadingModel::Nakagami:
      spec = FadingSpec::nakagami(nakagami_m);
      break;
    case FadingModel::Rician:
      spec = FadingSpec::rician(rician_K);
      break;
  }
  // A tail triple that departs from the defaults overrides the model's own.
  if (q0 != 1.0 || q1 != 1.0 || g0 != 0.0) {
    spec.q0 = q0;
    spec.q1 = q1;
    spec.g0 = g0;
  }
  return spec;
}

double ExperimentConfig::q2_effective() const {
  if (q2 > 0.0) return q2;
  return 4.0 / (varsigma * varsigma * varsigma * varsigma *
                static_cast<double>(M) * static_cast<double>(M));
}

double ExperimentConfig::q3_effective() const {
  if (q3 > 0.0) return q3;
  double pass = gain_pass_probability(fading_spec(), g_tau);
  if (pass >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-pass);
}

void ExperimentConfig::validate() const {
  if (!(varsigma > 0.0)) throw ConfigError("varsigma must be positive");
  if (!(kappa > 0.0)) throw ConfigError("kappa must be positive");
  if (!(eta > 0.0) || eta > 1.0)
    throw ConfigError("eta must lie in (0, 1]");
  if (!(delta > 0.0)) throw ConfigError("delta must be positive");
  if (!(alpha_c > 2.0))
    throw ConfigError("alpha_c must exceed 2 for summable interference");
  if (!(alpha_s > 0.0)) throw ConfigError("alpha_s must be positive");
  if (M <= 2)
    throw ConfigError("schedule parameter M must exceed 2 so active cells "
                      "stay separated");
  if (!(N0 > 0.0)) throw ConfigError("N0 must be positive");
  if (!(sigma0 > 0.0)) throw ConfigError("sigma0 must be positive");
  if (!(beta_s > 0.0)) throw ConfigError("beta_s must be positive");
  if (!(beta_c > 1.0))
    throw ConfigError("beta_c must exceed 1 (decodability margin)");

  fading_model_from_string(fading);  // throws ConfigError on unknown names
  if (!(nakagami_m >= 0.5))
    throw ConfigError("nakagami_m must be at least 0.5");
  if (!(rician_K >= 0.0)) throw ConfigError("rician_K must be nonnegative");
  if (!(g_tau >= 0.0)) throw ConfigError("g_tau must be nonnegative");
  if (!(I_tau > 0.0)) throw ConfigError("I_tau must be positive");
  if (gate_rings < 0) throw ConfigError("gate_rings must be nonnegative");
  if (sub_slots < 1) throw ConfigError("sub_slots must be at least 1");

  if (!(zeta > 0.0)) throw ConfigError("zeta must be positive");
  if (!(q0 > 0.0)) throw ConfigError("q0 must be positive");
  if (!(q1 > 0.0)) throw ConfigError("q1 must be positive");
  if (!(g0 >= 0.0)) throw ConfigError("g0 must be nonnegative");
  if (q2 < 0.0) throw ConfigError("q2 must be nonnegative (0 = derived)");
  if (q3 < 0.0) throw ConfigError("q3 must be nonnegative (0 = derived)");

  if (!(W > 0.0)) throw ConfigError("W must be positive");
  if (!(c1 >= 0.0)) throw ConfigError("c1 must be nonnegative");
  if (!(c2 > 0.0)) throw ConfigError("c2 must be positive");
  if (unroutable_warn < 0.0 || unroutable_warn > 1.0)
    throw ConfigError("unroutable_warn must lie in [0, 1]");

  if (sizes.empty()) throw ConfigError("sizes list must not be empty");
  for (double n : sizes)
    if (!(n > 0.0)) throw ConfigError("sizes entries must be positive");
  if (gammas.empty()) throw ConfigError("gammas list must not be empty");
  for (double g : gammas) {
    if (g < 0.0) throw ConfigError("gamma values must be nonnegative");
    if (g > alpha_c / 2.0)
      throw ConfigError("gamma must not exceed alpha_c / 2");
  }
  if (replicates < 1) throw ConfigError("replicates must be at least 1");
  if (pair_sample < 1) throw ConfigError("pair_sample must be at least 1");
  if (audit_receivers < 0)
    throw ConfigError("audit_receivers must be nonnegative (0 = all)");
  if (threads < 1) throw ConfigError("threads must be at least 1");
  if (out_dir.empty()) throw ConfigError("out_dir must not be empty");

  if (fading_enabled()) {
    ThresholdFeasibility fz = threshold_feasible(
        fading_spec(), g_tau, I_tau, varsigma, static_cast<double>(M),
        alpha_c);
    if (!fz.feasible) {
      throw ConfigError(
          "fading gate thresholds are infeasible: pass product " +
          fmt(fz.product) + " does not exceed the percolation threshold " +
          fmt(fz.threshold) + " (raise I_tau or lower g_tau)");
    }
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  ExperimentConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) +
                        ": expected key = value");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw ConfigError(path + ":" + std::to_string(lineno) + ": empty key");
    try {
      apply_override(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "varsigma") cfg.varsigma = parse_double(key, value);
  else if (key == "kappa") cfg.kappa = parse_double(key, value);
  else if (key == "eta") cfg.eta = parse_double(key, value);
  else if (key == "delta") cfg.delta = parse_double(key, value);
  else if (key == "alpha_c") cfg.alpha_c = parse_double(key, value);
  else if (key == "alpha_s") cfg.alpha_s = parse_double(key, value);
  else if (key == "M") cfg.M = parse_int(key, value);
  else if (key == "N0") cfg.N0 = parse_double(key, value);
  else if (key == "sigma0") cfg.sigma0 = parse_double(key, value);
  else if (key == "beta_s") cfg.beta_s = parse_double(key, value);
  else if (key == "beta_c") cfg.beta_c = parse_double(key, value);
  else if (key == "fading") cfg.fading = value;
  else if (key == "nakagami_m") cfg.nakagami_m = parse_double(key, value);
  else if (key == "rician_K") cfg.rician_K = parse_double(key, value);
  else if (key == "g_tau") cfg.g_tau = parse_double(key, value);
  else if (key == "I_tau") cfg.I_tau = parse_double(key, value);
  else if (key == "gate_rings") cfg.gate_rings = parse_int(key, value);
  else if (key == "sub_slots") cfg.sub_slots = parse_int(key, value);
  else if (key == "zeta") cfg.zeta = parse_double(key, value);
  else if (key == "q0") cfg.q0 = parse_double(key, value);
  else if (key == "q1") cfg.q1 = parse_double(key, value);
  else if (key == "g0") cfg.g0 = parse_double(key, value);
  else if (key == "q2") cfg.q2 = parse_double(key, value);
  else if (key == "q3") cfg.q3 = parse_double(key, value);
  else if (key == "W") cfg.W = parse_double(key, value);
  else if (key == "c1") cfg.c1 = parse_double(key, value);
  else if (key == "c2") cfg.c2 = parse_double(key, value);
  else if (key == "unroutable_warn")
    cfg.unroutable_warn = parse_double(key, value);
  else if (key == "sizes") cfg.sizes = parse_list(key, value);
  else if (key == "gammas") cfg.gammas = parse_list(key, value);
  else if (key == "replicates") cfg.replicates = parse_int(key, value);
  else if (key == "seed") cfg.seed = parse_u64(key, value);
  else if (key == "pair_sample") cfg.pair_sample = parse_int(key, value);
  else if (key == "audit_receivers")
    cfg.audit_receivers = parse_int(key, value);
  else if (key == "threads") cfg.threads = parse_int(key, value);
  else if (key == "out_dir") cfg.out_dir = value;
  else throw ConfigError("unknown config key: '" + key + "'");
}

std::string config_to_text(const ExperimentConfig& cfg) {
  std::ostringstream out;
  out << "varsigma = " << fmt(cfg.varsigma) << "\n"
      << "kappa = " << fmt(cfg.kappa) << "\n"
      << "eta = " << fmt(cfg.eta) << "\n"
      << "delta = " << fmt(cfg.delta) << "\n"
      << "alpha_c = " << fmt(cfg.alpha_c) << "\n"
      << "alpha_s = " << fmt(cfg.alpha_s) << "\n"
      << "M = " << cfg.M << "\n"
      << "N0 = " << fmt(cfg.N0) << "\n"
      << "sigma0 = " << fmt(cfg.sigma0) << "\n"
      << "beta_s = " << fmt(cfg.beta_s) << "\n"
      << "beta_c = " << fmt(cfg.beta_c) << "\n"
      << "fading = " << cfg.fading << "\n"
      << "nakagami_m = " << fmt(cfg.nakagami_m) << "\n"
      << "rician_K = " << fmt(cfg.rician_K) << "\n"
      << "g_tau = " << fmt(cfg.g_tau) << "\n"
      << "I_tau = " << fmt(cfg.I_tau) << "\n"
      << "gate_rings = " << cfg.gate_rings << "\n"
      << "sub_slots = " << cfg.sub_slots << "\n"
      << "zeta = " << fmt(cfg.zeta) << "\n"
      << "q0 = " << fmt(cfg.q0) << "\n"
      << "q1 = " << fmt(cfg.q1) << "\n"
      << "g0 = " << fmt(cfg.g0) << "\n"
      << "q2 = " << fmt(cfg.q2) << "\n"
      << "q3 = " << fmt(cfg.q3) << "\n"
      << "W = " << fmt(cfg.W) << "\n"
      << "c1 = " << fmt(cfg.c1) << "\n"
      << "c2 = " << fmt(cfg.c2) << "\n"
      << "unroutable_warn = " << fmt(cfg.unroutable_warn) << "\n"
      << "sizes = " << fmt_list(cfg.sizes) << "\n"
      << "gammas = " << fmt_list(cfg.gammas) << "\n"
      << "replicates = " << cfg.replicates << "\n"
      << "seed = " << cfg.seed << "\n"
      << "pair_sample = " << cfg.pair_sample << "\n"
      << "audit_receivers = " << cfg.audit_receivers << "\n"
      << "threads = " << cfg.threads << "\n"
      << "out_dir = " << cfg.out_dir << "\n";
  return out.str();
}

}  // namespace isac
