#include "isac/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "isac/errors.hpp"

namespace isac {

namespace {

using nlohmann::json;

json edge_to_json(const EdgeRef& e) {
  return json{{"o", e.o == Orient::H ? "H" : "V"}, {"I", e.I}, {"J", e.J}};
}

json cell_to_json(const CellId& c) { return json{c.i, c.j}; }

json slope_to_json(const SlopeFit& f) {
  return json{{"slope", f.slope},
              {"intercept", f.intercept},
              {"stderr_slope", f.stderr_slope},
              {"points", f.points}};
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

json instance_to_json(const NetworkInstance& inst) {
  json nodes = json::array();
  for (int k = 0; k < inst.count(); ++k)
    nodes.push_back(json{inst.nodes(0, k), inst.nodes(1, k)});
  return json{{"n", inst.n},
              {"side", inst.side},
              {"seed", inst.seed},
              {"nodes", std::move(nodes)},
              {"matching", inst.matching}};
}

NetworkInstance instance_from_json(const json& j) {
  NetworkInstance inst;
  inst.n = j.at("n").get<double>();
  inst.side = j.at("side").get<double>();
  inst.seed = j.at("seed").get<std::uint64_t>();
  const auto& nodes = j.at("nodes");
  inst.nodes.resize(2, static_cast<Eigen::Index>(nodes.size()));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    inst.nodes(0, static_cast<Eigen::Index>(k)) = nodes[k].at(0).get<double>();
    inst.nodes(1, static_cast<Eigen::Index>(k)) = nodes[k].at(1).get<double>();
  }
  inst.matching = j.at("matching").get<std::vector<std::int32_t>>();
  if (inst.matching.size() != nodes.size())
    throw ConfigError("instance json: matching size differs from node count");
  return inst;
}

json highways_to_json(const HighwaySystem& hw) {
  auto side_to_json = [](const std::vector<BandHighways>& side) {
    json arr = json::array();
    for (const auto& band : side) {
      json paths = json::array();
      for (const auto& p : band.paths) {
        json verts = json::array();
        for (const auto& v : p.verts) verts.push_back(json{v.first, v.second});
        json edges = json::array();
        for (const auto& e : p.edges) edges.push_back(edge_to_json(e));
        json cells = json::array();
        for (const auto& c : p.cells) cells.push_back(cell_to_json(c));
        paths.push_back(json{{"verts", std::move(verts)},
                             {"edges", std::move(edges)},
                             {"cells", std::move(cells)},
                             {"relays", p.relays}});
      }
      arr.push_back(json{{"horizontal", band.spec.horizontal},
                         {"index", band.spec.index},
                         {"row0", band.spec.row0},
                         {"rows", band.spec.rows},
                         {"complete", band.spec.complete},
                         {"max_flow", band.max_flow},
                         {"paths", std::move(paths)}});
    }
    return arr;
  };
  return json{{"band_rows", hw.band_rows},
              {"horizontal", side_to_json(hw.horizontal)},
              {"vertical", side_to_json(hw.vertical)}};
}

json route_to_json(const RoutePlan& route) {
  json hops = json::array();
  for (const auto& h : route.hops)
    hops.push_back(json{{"cell", cell_to_json(h.cell)},
                        {"relay", h.relay},
                        {"dist", h.dist}});
  return json{{"src", route.src},
              {"dst", route.dst},
              {"routable", route.routable},
              {"reason", route.reason},
              {"entry_relay", route.entry_relay},
              {"exit_relay", route.exit_relay},
              {"drain_dist", route.drain_dist},
              {"deliver_dist", route.deliver_dist},
              {"hops", std::move(hops)},
              {"highway_hops", route.highway_hops},
              {"D", route.D},
              {"entry_miss", route.entry_miss},
              {"exit_miss", route.exit_miss}};
}

json run_to_json(const RunMetrics& r) {
  return json{{"n", r.n},
              {"gamma", r.gamma},
              {"replicate", r.replicate},
              {"seed", r.seed},
              {"nodes", r.nodes},
              {"open_fraction", r.open_fraction},
              {"open_prob_formula", r.open_prob_formula},
              {"xi", r.xi},
              {"band_rows", r.band_rows},
              {"paths_horizontal", r.paths_horizontal},
              {"paths_vertical", r.paths_vertical},
              {"prop1_threshold", r.prop1_threshold},
              {"prop1_fraction", r.prop1_fraction},
              {"complete_bands", r.complete_bands},
              {"max_occupancy", r.max_occupancy},
              {"occupancy_bound_value", r.occupancy_bound_value},
              {"occupancy_ok", r.occupancy_ok},
              {"unroutable_fraction", r.unroutable_fraction},
              {"pairs_routed", r.pairs_routed},
              {"D_max", r.D_max},
              {"D_median", r.D_median},
              {"hop_len_max", r.hop_len_max},
              {"hop_len_bound", r.hop_len_bound},
              {"drain_dist_max", r.drain_dist_max},
              {"deliver_dist_max", r.deliver_dist_max},
              {"drain_dist_bound", r.drain_dist_bound},
              {"entry_misses", r.entry_misses},
              {"exit_misses", r.exit_misses},
              {"rate_min_drain", r.rate_min_drain},
              {"rate_min_highway", r.rate_min_highway},
              {"rate_min_deliver", r.rate_min_deliver},
              {"lambda_drain", r.lambda_drain},
              {"lambda_drain_conservative", r.lambda_drain_conservative},
              {"lambda_highway", r.lambda_highway},
              {"lambda_deliver", r.lambda_deliver},
              {"M_drain", r.M_drain},
              {"interference_max", r.interference_max},
              {"interference_mean", r.interference_mean},
              {"layer_bound", r.layer_bound},
              {"bound_violations", r.bound_violations},
              {"receivers_audited", r.receivers_audited},
              {"interference_drain_max", r.interference_drain_max},
              {"interference_deliver_max", r.interference_deliver_max},
              {"sense_min_highway", r.sense_min_highway},
              {"sense_p5_highway", r.sense_p5_highway},
              {"sense_med_highway", r.sense_med_highway},
              {"sense_min_drain", r.sense_min_drain},
              {"sense_p5_drain", r.sense_p5_drain},
              {"sense_med_drain", r.sense_med_drain},
              {"sense_interference_max", r.sense_interference_max},
              {"sense_freq_highway", r.sense_freq_highway},
              {"sense_freq_drain", r.sense_freq_drain},
              {"min_separation", r.min_separation},
              {"separation_floor", r.separation_floor},
              {"max_active_per_slot", r.max_active_per_slot},
              {"max_active_per_slot_drain", r.max_active_per_slot_drain},
              {"converse_cap", r.converse_cap},
              {"converse_ok", r.converse_ok},
              {"envelope_value", r.envelope_value},
              {"envelope_exceed_fraction", r.envelope_exceed_fraction},
              {"gate_closed_gain", r.gate_closed_gain},
              {"gate_closed_interference", r.gate_closed_interference}};
}

json sweep_to_json(const SweepReport& report) {
  json runs = json::array();
  for (const auto& r : report.runs) runs.push_back(run_to_json(r));
  json slopes = json::array();
  for (const auto& s : report.slopes)
    slopes.push_back(
        json{{"gamma", s.gamma},
             {"lambda_highway", slope_to_json(s.lambda_highway)},
             {"lambda_drain", slope_to_json(s.lambda_drain)},
             {"lambda_drain_conservative",
              slope_to_json(s.lambda_drain_conservative)},
             {"sense_min_highway", slope_to_json(s.sense_min_highway)},
             {"sense_freq_highway", slope_to_json(s.sense_freq_highway)}});
  return json{{"config", config_to_json(report.cfg)},
              {"runs", std::move(runs)},
              {"slopes", std::move(slopes)}};
}

json verify_to_json(const VerifyReport& report) {
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back(json{{"name", c.name},
                          {"pass", c.pass},
                          {"value", c.value},
                          {"reference", c.reference},
                          {"note", c.note}});
  return json{{"checks", std::move(checks)},
              {"all_pass", report.all_pass()}};
}

json config_to_json(const ExperimentConfig& cfg) {
  return json{{"varsigma", cfg.varsigma},
              {"kappa", cfg.kappa},
              {"eta", cfg.eta},
              {"delta", cfg.delta},
              {"alpha_c", cfg.alpha_c},
              {"alpha_s", cfg.alpha_s},
              {"M", cfg.M},
              {"N0", cfg.N0},
              {"sigma0", cfg.sigma0},
              {"beta_s", cfg.beta_s},
              {"beta_c", cfg.beta_c},
              {"fading", cfg.fading},
              {"nakagami_m", cfg.nakagami_m},
              {"rician_K", cfg.rician_K},
              {"g_tau", cfg.g_tau},
              {"I_tau", cfg.I_tau},
              {"gate_rings", cfg.gate_rings},
              {"sub_slots", cfg.sub_slots},
              {"zeta", cfg.zeta},
              {"q0", cfg.q0},
              {"q1", cfg.q1},
              {"g0", cfg.g0},
              {"q2", cfg.q2},
              {"q3", cfg.q3},
              {"W", cfg.W},
              {"c1", cfg.c1},
              {"c2", cfg.c2},
              {"unroutable_warn", cfg.unroutable_warn},
              {"sizes", cfg.sizes},
              {"gammas", cfg.gammas},
              {"replicates", cfg.replicates},
              {"seed", cfg.seed},
              {"pair_sample", cfg.pair_sample},
              {"audit_receivers", cfg.audit_receivers},
              {"threads", cfg.threads},
              {"out_dir", cfg.out_dir}};
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  cfg.varsigma = j.at("varsigma").get<double>();
  cfg.kappa = j.at("kappa").get<double>();
  cfg.eta = j.at("eta").get<double>();
  cfg.delta = j.at("delta").get<double>();
  cfg.alpha_c = j.at("alpha_c").get<double>();
  cfg.alpha_s = j.at("alpha_s").get<double>();
  cfg.M = j.at("M").get<int>();
  cfg.N0 = j.at("N0").get<double>();
  cfg.sigma0 = j.at("sigma0").get<double>();
  cfg.beta_s = j.at("beta_s").get<double>();
  cfg.beta_c = j.at("beta_c").get<double>();
  cfg.fading = j.at("fading").get<std::string>();
  cfg.nakagami_m = j.at("nakagami_m").get<double>();
  cfg.rician_K = j.at("rician_K").get<double>();
  cfg.g_tau = j.at("g_tau").get<double>();
  cfg.I_tau = j.at("I_tau").get<double>();
  cfg.gate_rings = j.at("gate_rings").get<int>();
  cfg.sub_slots = j.at("sub_slots").get<int>();
  cfg.zeta = j.at("zeta").get<double>();
  cfg.q0 = j.at("q0").get<double>();
  cfg.q1 = j.at("q1").get<double>();
  cfg.g0 = j.at("g0").get<double>();
  cfg.q2 = j.at("q2").get<double>();
  cfg.q3 = j.at("q3").get<double>();
  cfg.W = j.at("W").get<double>();
  cfg.c1 = j.at("c1").get<double>();
  cfg.c2 = j.at("c2").get<double>();
  cfg.unroutable_warn = j.at("unroutable_warn").get<double>();
  cfg.sizes = j.at("sizes").get<std::vector<double>>();
  cfg.gammas = j.at("gammas").get<std::vector<double>>();
  cfg.replicates = j.at("replicates").get<int>();
  cfg.seed = j.at("seed").get<std::uint64_t>();
  cfg.pair_sample = j.at("pair_sample").get<int>();
  cfg.audit_receivers = j.at("audit_receivers").get<int>();
  cfg.threads = j.at("threads").get<int>();
  cfg.out_dir = j.at("out_dir").get<std::string>();
  return cfg;
}

std::string sweep_to_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "n,gamma,replicate,phase,lambda,rate_min,sense_min,sense_p5,"
         "sense_med,sense_freq,max_occupancy,paths_horizontal,"
         "paths_vertical,prop1_fraction,D_max,unroutable_fraction,"
         "interference_max,layer_bound,bound_violations\n";
  for (const auto& r : report.runs) {
    auto row = [&](const char* phase, double lambda, double rate, double smin,
                   double sp5, double smed, double sfreq, double imax) {
      out << format_double(r.n) << ',' << format_double(r.gamma) << ','
          << r.replicate << ',' << phase << ',' << format_double(lambda)
          << ',' << format_double(rate) << ',' << format_double(smin) << ','
          << format_double(sp5) << ',' << format_double(smed) << ','
          << format_double(sfreq) << ',' << r.max_occupancy << ','
          << r.paths_horizontal << ',' << r.paths_vertical << ','
          << format_double(r.prop1_fraction) << ',' << format_double(r.D_max)
          << ',' << format_double(r.unroutable_fraction) << ','
          << format_double(imax) << ',' << format_double(r.layer_bound) << ','
          << r.bound_violations << '\n';
    };
    row("draining", r.lambda_drain, r.rate_min_drain, r.sense_min_drain,
        r.sense_p5_drain, r.sense_med_drain, r.sense_freq_drain,
        r.interference_drain_max);
    row("highway", r.lambda_highway, r.rate_min_highway, r.sense_min_highway,
        r.sense_p5_highway, r.sense_med_highway, r.sense_freq_highway,
        r.interference_max);
    row("delivering", r.lambda_deliver, r.rate_min_deliver, r.sense_min_drain,
        r.sense_p5_drain, r.sense_med_drain, r.sense_freq_drain,
        r.interference_deliver_max);
  }
  return out.str();
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
  std::ostringstream out;
  out << "scheme,n,gamma,alpha_c,alpha_s,lambda_order,d_order\n";
  for (const auto& p : points)
    out << p.scheme << ',' << format_double(p.n) << ','
        << format_double(p.gamma) << ',' << format_double(p.alpha_c) << ','
        << format_double(p.alpha_s) << ',' << format_double(p.lambda_order)
        << ',' << format_double(p.d_order) << '\n';
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open file for writing: " + path);
  out << content;
  if (!out) throw ConfigError("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace isac
