// End-to-end replicate pipeline: determinism, sweep shape, thread
// independence of the outputs, and the built-in verification ledger.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <string>

#include "isac/config.hpp"
#include "isac/experiment.hpp"
#include "isac/serialize.hpp"

using namespace isac;

namespace {

ExperimentConfig toy_config() {
  ExperimentConfig cfg;
  cfg.sizes = {5000.0, 9000.0};
  cfg.gammas = {0.2};
  cfg.replicates = 2;
  cfg.pair_sample = 300;
  cfg.audit_receivers = 300;
  return cfg;
}

}  // namespace

TEST_CASE("replicate seeds separate the sweep grid") {
  const ExperimentConfig cfg;
  CHECK(replicate_seed(cfg, 1e4, 0.0, 0) != replicate_seed(cfg, 1e4, 0.0, 1));
  CHECK(replicate_seed(cfg, 1e4, 0.0, 0) != replicate_seed(cfg, 4e4, 0.0, 0));
  CHECK(replicate_seed(cfg, 1e4, 0.0, 0) != replicate_seed(cfg, 1e4, 0.3, 0));
  CHECK(replicate_seed(cfg, 1e4, 0.3, 1) == replicate_seed(cfg, 1e4, 0.3, 1));
}

TEST_CASE("a replicate reproduces itself bit for bit") {
  const ExperimentConfig cfg = toy_config();
  const RunMetrics a = run_replicate(cfg, 5000.0, 0.2, 0);
  const RunMetrics b = run_replicate(cfg, 5000.0, 0.2, 0);
  CHECK(a.seed == b.seed);
  CHECK(a.nodes == b.nodes);
  CHECK(a.lambda_highway == b.lambda_highway);
  CHECK(a.lambda_drain == b.lambda_drain);
  CHECK(a.interference_max == b.interference_max);
  CHECK(a.sense_min_highway == b.sense_min_highway);
  CHECK(a.max_occupancy == b.max_occupancy);
  CHECK(a.D_max == b.D_max);
  CHECK(a.prop1_fraction == b.prop1_fraction);

  // Core structural gates hold on a healthy run.
  CHECK(a.bound_violations == 0);
  CHECK(a.converse_ok);
  CHECK(a.occupancy_ok);
  CHECK(a.hop_len_max <= a.hop_len_bound + 1e-9);
  CHECK(a.lambda_highway > 0.0);
  CHECK(a.sense_min_highway > 0.0);
}

TEST_CASE("sweep produces one run per grid cell and skips thin fits") {
  const ExperimentConfig cfg = toy_config();
  const SweepReport report = run_sweep(cfg);
  REQUIRE(report.runs.size() == 4);  // 2 sizes x 1 gamma x 2 replicates
  REQUIRE(report.slopes.size() == 1);
  // Two sizes cannot support a log-log fit; the slot stays empty.
  CHECK(report.slopes[0].lambda_highway.points == 0);

  const std::string csv = sweep_to_csv(report);
  const std::string header =
      "n,gamma,replicate,phase,lambda,rate_min,sense_min,sense_p5,"
      "sense_med,sense_freq,max_occupancy,paths_horizontal,paths_vertical,"
      "prop1_fraction,D_max,unroutable_fraction,interference_max,"
      "layer_bound,bound_violations";
  CHECK(csv.substr(0, header.size()) == header);
  // One header plus three phase rows per run.
  const long lines = std::count(csv.begin(), csv.end(), '\n');
  CHECK(lines == 1 + 3 * static_cast<long>(report.runs.size()));
}

TEST_CASE("csv bytes are identical across runs and thread counts") {
  ExperimentConfig cfg = toy_config();
  cfg.threads = 1;
  const std::string csv1 = sweep_to_csv(run_sweep(cfg));
  const std::string csv1b = sweep_to_csv(run_sweep(cfg));
  CHECK(csv1 == csv1b);
  cfg.threads = 2;
  const std::string csv2 = sweep_to_csv(run_sweep(cfg));
  CHECK(csv1 == csv2);
}

TEST_CASE("manifest text reproduces the same report") {
  ExperimentConfig cfg = toy_config();
  const SweepReport first = run_sweep(cfg);
  const std::string manifest = config_to_text(cfg);

  const std::string path =
      (std::filesystem::temp_directory_path() / "isac_manifest_rt.cfg")
          .string();
  write_text_file(path, manifest);
  const ExperimentConfig loaded = load_config(path);
  std::remove(path.c_str());

  const SweepReport second = run_sweep(loaded);
  CHECK(sweep_to_csv(first) == sweep_to_csv(second));
}

TEST_CASE("built-in verification ledger passes") {
  const ExperimentConfig cfg;
  const VerifyReport report = run_verify(cfg);
  CHECK(!report.checks.empty());
  for (const VerifyCheck& c : report.checks) {
    INFO(c.name, " value=", c.value, " reference=", c.reference);
    CHECK(c.pass);
  }
  CHECK(report.all_pass());
}
