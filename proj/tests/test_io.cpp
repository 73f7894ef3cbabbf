// Configuration parsing/validation and JSON/CSV serialization round-trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "isac/config.hpp"
#include "isac/errors.hpp"
#include "isac/network.hpp"
#include "isac/serialize.hpp"

using namespace isac;

namespace {

std::string temp_path(const char* name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("defaults validate and derive audit constants") {
  ExperimentConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  // q2 left at 0 derives the receiver-count prefactor 4/(varsigma^4 M^2).
  CHECK(cfg.q2_effective() == doctest::Approx(0.015625).epsilon(1e-12));
  cfg.q2 = 0.5;
  CHECK(cfg.q2_effective() == 0.5);
  // q3 left at 0 derives -log(1 - P[g >= g_tau]) for the gate threshold.
  cfg.fading = "exponential";
  const double pass = std::exp(-cfg.g_tau);
  CHECK(cfg.q3_effective() ==
        doctest::Approx(-std::log1p(-pass)).epsilon(1e-12));
  cfg.q3 = 2.0;
  CHECK(cfg.q3_effective() == 2.0);
}

TEST_CASE("fading spec selection and tail override") {
  ExperimentConfig cfg;
  CHECK(cfg.fading_spec().model == FadingModel::None);
  CHECK_FALSE(cfg.fading_enabled());

  cfg.fading = "nakagami";
  cfg.nakagami_m = 2.5;
  FadingSpec spec = cfg.fading_spec();
  CHECK(spec.model == FadingModel::Nakagami);
  CHECK(spec.m == 2.5);

  // Explicit tail parameters replace the model's own envelope.
  cfg.q0 = 2.0;
  cfg.q1 = 0.7;
  cfg.g0 = 1.0;
  spec = cfg.fading_spec();
  CHECK(spec.q0 == 2.0);
  CHECK(spec.q1 == 0.7);
  CHECK(spec.g0 == 1.0);
}

TEST_CASE("overrides reach every field and reject junk") {
  ExperimentConfig cfg;
  apply_override(cfg, "varsigma", "1.5");
  apply_override(cfg, "M", "5");
  apply_override(cfg, "fading", "exponential");
  apply_override(cfg, "seed", "123");
  apply_override(cfg, "sizes", "1000, 2000");
  apply_override(cfg, "gammas", "0.1,0.2");
  apply_override(cfg, "out_dir", "elsewhere");
  CHECK(cfg.varsigma == 1.5);
  CHECK(cfg.M == 5);
  CHECK(cfg.fading == "exponential");
  CHECK(cfg.seed == 123);
  CHECK(cfg.sizes == std::vector<double>{1000.0, 2000.0});
  CHECK(cfg.gammas == std::vector<double>{0.1, 0.2});
  CHECK(cfg.out_dir == "elsewhere");

  CHECK_THROWS_AS(apply_override(cfg, "nonsense", "1"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "varsigma", "abc"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "M", "4.5"), ConfigError);
  CHECK_THROWS_AS(apply_override(cfg, "sizes", ""), ConfigError);
}

TEST_CASE("config text round-trips through a file") {
  ExperimentConfig cfg;
  cfg.varsigma = 1.25;
  cfg.fading = "rician";
  cfg.rician_K = 3.5;
  cfg.sizes = {5000.0, 12500.0};
  cfg.gammas = {0.0, 0.45};
  cfg.seed = 987654321;
  cfg.out_dir = "round_trip";
  const std::string text = config_to_text(cfg);
  const std::string path = temp_path("isac_cfg_roundtrip.cfg");
  write_text_file(path, text);
  const ExperimentConfig back = load_config(path);
  CHECK(config_to_text(back) == text);
  std::remove(path.c_str());
}

TEST_CASE("config files report the offending line") {
  const std::string path = temp_path("isac_cfg_bad.cfg");
  write_text_file(path, "# comment\nvarsigma = 2\nbogus_key = 1\n");
  try {
    load_config(path);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find(":3:") != std::string::npos);
    CHECK(msg.find("bogus_key") != std::string::npos);
  }
  std::remove(path.c_str());
  CHECK_THROWS_AS(load_config(temp_path("isac_no_such_file.cfg")),
                  ConfigError);
}

TEST_CASE("validation rejects out-of-domain settings") {
  auto broken = [](auto&& mutate) {
    ExperimentConfig cfg;
    mutate(cfg);
    return cfg;
  };
  CHECK_THROWS_AS(broken([](auto& c) { c.varsigma = 0.0; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.M = 2; }).validate(), ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.alpha_c = 2.0; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.eta = 1.5; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.beta_c = 1.0; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.fading = "rayleigh"; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.gammas = {2.0}; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.sizes = {}; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.replicates = 0; }).validate(),
                  ConfigError);
  CHECK_THROWS_AS(broken([](auto& c) { c.out_dir = ""; }).validate(),
                  ConfigError);
  // Infeasible fading gate: the threshold comparison fails loudly.
  try {
    ExperimentConfig cfg;
    cfg.fading = "exponential";
    cfg.g_tau = 5.0;
    cfg.validate();
    FAIL("expected ConfigError for an infeasible gate");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("threshold") != std::string::npos);
  }
}

TEST_CASE("network instances survive a JSON round-trip") {
  const NetworkInstance inst = generate_network(3000.0, 19);
  const NetworkInstance back = instance_from_json(instance_to_json(inst));
  CHECK(back.n == inst.n);
  CHECK(back.seed == inst.seed);
  REQUIRE(back.count() == inst.count());
  CHECK(back.nodes == inst.nodes);
  CHECK(back.matching == inst.matching);

  nlohmann::json j = instance_to_json(inst);
  j["matching"].erase(0);
  CHECK_THROWS_AS(instance_from_json(j), ConfigError);
}

TEST_CASE("experiment config survives a JSON round-trip") {
  ExperimentConfig cfg;
  cfg.fading = "nakagami";
  cfg.nakagami_m = 1.75;
  cfg.sizes = {1e4, 9e4};
  cfg.gammas = {0.05, 0.55};
  cfg.threads = 3;
  cfg.seed = 31337;
  const ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(config_to_text(back) == config_to_text(cfg));
}

TEST_CASE("double formatting round-trips exactly") {
  for (double v : {3.141592653589793, 1e300, 6.02e-23, -0.0, 42.0,
                   0.1000000000000001}) {
    const std::string s = format_double(v);
    CHECK(std::strtod(s.c_str(), nullptr) == v);
  }
}

TEST_CASE("text files round-trip and missing reads fail") {
  const std::string path = temp_path("isac_io_roundtrip.txt");
  const std::string content = "alpha\nbeta\n";
  write_text_file(path, content);
  CHECK(read_text_file(path) == content);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file(path), ConfigError);
}
