#pragma once
#include <json.hpp>
#include <string>

#include "isac/analytic.hpp"
#include "isac/experiment.hpp"
#include "isac/highways.hpp"
#include "isac/network.hpp"
#include "isac/routing.hpp"

namespace isac {

nlohmann::json instance_to_json(const NetworkInstance& inst);
NetworkInstance instance_from_json(const nlohmann::json& j);

nlohmann::json highways_to_json(const HighwaySystem& hw);
nlohmann::json route_to_json(const RoutePlan& route);
nlohmann::json run_to_json(const RunMetrics& run);
nlohmann::json sweep_to_json(const SweepReport& report);
nlohmann::json verify_to_json(const VerifyReport& report);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

// Flat per-(n, gamma, phase, replicate) rows.
std::string sweep_to_csv(const SweepReport& report);

// scheme, n, gamma, alpha_c, alpha_s, lambda_order, d_order
std::string curve_to_csv(const std::vector<CurvePoint>& points);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

// Fixed "%.17g"-style shortest-round-trip double formatting used for all
// CSV output so bytes are identical across runs and thread counts.
std::string format_double(double v);

}  // namespace isac
