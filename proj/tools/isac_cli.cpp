// Command-line front end: replicate simulation, scaling sweeps, analytic
// trade-off curves, and the self-verification ledger.
#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "isac/analytic.hpp"
#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/experiment.hpp"
#include "isac/fading.hpp"
#include "isac/highways.hpp"
#include "isac/lattice.hpp"
#include "isac/network.hpp"
#include "isac/rng.hpp"
#include "isac/serialize.hpp"

namespace {

struct CommonOpts {
  std::string config_path;
  std::vector<std::string> overrides;
};

isac::ExperimentConfig build_config(const CommonOpts& opts) {
  isac::ExperimentConfig cfg;
  if (!opts.config_path.empty()) cfg = isac::load_config(opts.config_path);
  for (const std::string& kv : opts.overrides) {
    const std::size_t eq = kv.find('=');
    if (eq == std::string::npos) {
      throw isac::ConfigError("--set expects key=value, got '" + kv + "'");
    }
    isac::apply_override(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  cfg.validate();
  return cfg;
}

void add_common(CLI::App* app, CommonOpts& opts) {
  app->add_option("--config", opts.config_path,
                  "key = value config file to start from");
  app->add_option("--set", opts.overrides,
                  "override one field, key=value (repeatable)");
}

void write_or_print(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
  } else {
    isac::write_text_file(path, content);
  }
}

int cmd_simulate(const CommonOpts& opts, double n, double gamma,
                 int replicate, const std::string& out) {
  isac::ExperimentConfig cfg = build_config(opts);
  if (gamma > cfg.alpha_c / 2.0) {
    throw isac::ConfigError("gamma must not exceed alpha_c / 2");
  }
  const isac::RunMetrics run = isac::run_replicate(cfg, n, gamma, replicate);
  if (run.unroutable_fraction > cfg.unroutable_warn) {
    std::fprintf(stderr,
                 "warning: unroutable fraction %.4f exceeds %.4f\n",
                 run.unroutable_fraction, cfg.unroutable_warn);
  }
  write_or_print(out, isac::run_to_json(run).dump(2) + "\n");
  return 0;
}

int cmd_sweep(const CommonOpts& opts) {
  isac::ExperimentConfig cfg = build_config(opts);
  const isac::SweepReport report = isac::run_sweep(cfg);

  std::filesystem::create_directories(cfg.out_dir);
  isac::write_text_file(cfg.out_dir + "/manifest.txt",
                        isac::config_to_text(cfg));
  isac::write_text_file(cfg.out_dir + "/sweep.json",
                        isac::sweep_to_json(report).dump(2) + "\n");
  isac::write_text_file(cfg.out_dir + "/sweep.csv",
                        isac::sweep_to_csv(report));

  double worst_unroutable = 0.0;
  for (const isac::RunMetrics& run : report.runs) {
    worst_unroutable = std::max(worst_unroutable, run.unroutable_fraction);
  }
  if (worst_unroutable > cfg.unroutable_warn) {
    std::fprintf(stderr,
                 "warning: unroutable fraction %.4f exceeds %.4f\n",
                 worst_unroutable, cfg.unroutable_warn);
  }

  for (const isac::GammaSlopes& gs : report.slopes) {
    if (gs.lambda_highway.points < 3) continue;
    const double ref_lambda = -(gs.gamma / cfg.alpha_c + 0.5);
    const double ref_sense = gs.gamma / cfg.alpha_s;
    std::printf(
        "gamma %.3f: lambda_highway slope %+.4f (reference %+.4f), "
        "sense_min slope %+.4f (reference %+.4f)\n",
        gs.gamma, gs.lambda_highway.slope, ref_lambda,
        gs.sense_min_highway.slope, ref_sense);
  }
  std::printf("wrote %s/{manifest.txt,sweep.json,sweep.csv} (%zu runs)\n",
              cfg.out_dir.c_str(), report.runs.size());
  return 0;
}

int cmd_analytic(double n, double alpha_c, double alpha_s, double gamma_min,
                 double gamma_max, double gamma_step, const std::string& out) {
  std::vector<double> gammas;
  for (int k = 0;; ++k) {
    const double g = gamma_min + k * gamma_step;
    if (g > gamma_max + 1e-9 * gamma_step) break;
    gammas.push_back(std::min(g, gamma_max));
  }
  const std::vector<isac::CurvePoint> curve =
      isac::tradeoff_curve(n, gammas, alpha_c, alpha_s);
  write_or_print(out, isac::curve_to_csv(curve));
  return 0;
}

// Rebuild the exact instance a replicate used (same seed path as the
// simulator) and dump the sampled network plus extracted highway system.
int cmd_export(const CommonOpts& opts, double n, double gamma, int replicate,
               const std::string& out) {
  isac::ExperimentConfig cfg = build_config(opts);
  if (gamma > cfg.alpha_c / 2.0) {
    throw isac::ConfigError("gamma must not exceed alpha_c / 2");
  }
  const std::uint64_t seed = isac::replicate_seed(cfg, n, gamma, replicate);
  const isac::NetworkInstance inst = isac::generate_network(n, seed);

  isac::LatticeParams lp;
  lp.n = n;
  lp.varsigma = cfg.varsigma;
  lp.gamma = gamma;
  lp.alpha_c = cfg.alpha_c;
  lp.kappa = cfg.kappa;
  isac::LatticeSystem lat = isac::partition_cells(inst, lp);
  if (cfg.fading_enabled()) {
    isac::FadingField field(cfg.fading_spec(),
                            isac::derive_seed(seed, 0x9a1f));
    isac::apply_fading_gate(lat, inst, field, cfg.M, cfg.g_tau, cfg.I_tau,
                            cfg.gate_rings, isac::f_value(n, gamma),
                            cfg.alpha_c);
  } else {
    isac::mark_open_closed(lat);
  }
  const isac::HighwaySystem hw = isac::extract_highways(lat);

  nlohmann::json j;
  j["n"] = n;
  j["gamma"] = gamma;
  j["replicate"] = replicate;
  j["seed"] = seed;
  j["cell_side"] = lat.cell_side;
  j["xi"] = lat.xi;
  j["open_fraction"] = lat.open_fraction_interior();
  j["instance"] = isac::instance_to_json(inst);
  j["highways"] = isac::highways_to_json(hw);
  write_or_print(out, j.dump(2) + "\n");
  return 0;
}

int cmd_verify(const CommonOpts& opts, const std::string& out, bool as_json) {
  isac::ExperimentConfig cfg = build_config(opts);
  const isac::VerifyReport report = isac::run_verify(cfg);
  if (as_json) {
    write_or_print(out, isac::verify_to_json(report).dump(2) + "\n");
  } else {
    std::string text;
    for (const isac::VerifyCheck& c : report.checks) {
      text += (c.pass ? "[PASS] " : "[FAIL] ") + c.name + "  value=" +
              isac::format_double(c.value) + "  reference=" +
              isac::format_double(c.reference);
      if (!c.note.empty()) text += "  (" + c.note + ")";
      text += "\n";
    }
    text += report.all_pass() ? "all checks passed\n"
                              : "one or more checks FAILED\n";
    write_or_print(out, text);
  }
  return report.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Simulator and analytic toolkit for percolation-highway "
      "integrated sensing and communication networks"};
  app.require_subcommand(1);

  CommonOpts sim_opts, sweep_opts, verify_opts, export_opts;
  double sim_n = 1e5, sim_gamma = 0.0;
  int sim_rep = 0;
  double exp_n = 1e5, exp_gamma = 0.0;
  int exp_rep = 0;
  std::string sim_out, verify_out, analytic_out, export_out;
  bool verify_json = false;
  double an_n = 1e8, an_ac = 3.0, an_as = 2.0;
  double an_gmin = 0.05, an_gmax = 1.25, an_gstep = 0.05;

  CLI::App* sim = app.add_subcommand(
      "simulate", "run one replicate and print its metrics as JSON");
  add_common(sim, sim_opts);
  sim->add_option("--n", sim_n, "mean node count");
  sim->add_option("--gamma", sim_gamma, "power exponent");
  sim->add_option("--replicate", sim_rep, "replicate index");
  sim->add_option("--out", sim_out, "output file ('-' = stdout)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "run the full size x gamma sweep and write reports");
  add_common(sweep, sweep_opts);

  CLI::App* analytic = app.add_subcommand(
      "analytic", "emit the throughput/sensing trade-off curve CSV");
  analytic->add_option("--n", an_n, "evaluation size");
  analytic->add_option("--alpha-c", an_ac, "communication path-loss exponent");
  analytic->add_option("--alpha-s", an_as, "sensing path-loss exponent");
  analytic->add_option("--gamma-min", an_gmin, "grid start (exclusive of 0)");
  analytic->add_option("--gamma-max", an_gmax, "grid end");
  analytic->add_option("--gamma-step", an_gstep, "grid step");
  analytic->add_option("--out", analytic_out, "output file ('-' = stdout)");

  CLI::App* exp = app.add_subcommand(
      "export", "dump one replicate's network and highway system as JSON");
  add_common(exp, export_opts);
  exp->add_option("--n", exp_n, "mean node count");
  exp->add_option("--gamma", exp_gamma, "power exponent");
  exp->add_option("--replicate", exp_rep, "replicate index");
  exp->add_option("--out", export_out, "output file ('-' = stdout)");

  CLI::App* verify = app.add_subcommand(
      "verify", "run the built-in reference checks (nonzero exit on failure)");
  add_common(verify, verify_opts);
  verify->add_option("--out", verify_out, "output file ('-' = stdout)");
  verify->add_flag("--json", verify_json, "emit JSON instead of text");

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) {
      return cmd_simulate(sim_opts, sim_n, sim_gamma, sim_rep, sim_out);
    }
    if (sweep->parsed()) return cmd_sweep(sweep_opts);
    if (exp->parsed()) {
      return cmd_export(export_opts, exp_n, exp_gamma, exp_rep, export_out);
    }
    if (analytic->parsed()) {
      return cmd_analytic(an_n, an_ac, an_as, an_gmin, an_gmax, an_gstep,
                          analytic_out);
    }
    if (verify->parsed()) {
      return cmd_verify(verify_opts, verify_out, verify_json);
    }
  } catch (const isac::ConfigError& e) {
    std::fprintf(stderr, "parameter error: %s\n", e.what());
    return 1;
  } catch (const isac::InvariantViolation& e) {
    std::fprintf(stderr, "invariant violation: %s\n", e.what());
    return 2;
  } catch (const isac::DomainError& e) {
    std::fprintf(stderr, "domain error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  }
  return 0;
}
