#pragma once

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "fovguard/config.hpp"
#include "fovguard/simulator.hpp"

namespace fovguard {

inline json plan_to_json(const DurationPlan& plan) {
  return {{"t_obw_s", plan.t_obw},     {"t_com_s", plan.t_com},
          {"t_cpt_s", plan.t_cpt},     {"t_cc_s", plan.t_cc()},
          {"slack_s", plan.slack},     {"t_ps_s", plan.t_ps},
          {"tau_s", plan.tau},         {"n_obw_samples", plan.n_obw_samples},
          {"n_p", plan.n_p},           {"no_observation", plan.no_observation()}};
}

/// Optimal duration split for the configured video, rates, and rho_s.
/// Throws InfeasiblePlan when the SDoP cannot be met within T_ps.
inline json cmd_optimize(const RunConfig& cfg) {
  cfg.validate();
  const Rates rates = cfg.resolve_rates();
  const PrivacySpec spec(cfg.rho_s);
  const DurationPlan plan = optimize_durations(cfg.clock, cfg.tau, spec, cfg.video, rates);
  const TileBits bits = tile_bits(cfg.video);
  json j;
  j["feasible"] = true;
  j["rho_s"] = cfg.rho_s;
  j["n_p"] = plan.n_p;
  j["plan"] = plan_to_json(plan);
  j["cc_capability"] = cc_capability(plan.t_com, plan.t_cpt, rates, bits, cfg.video.grid.tile_count());
  j["max_resources_rate"] = max_resources_rate(cfg.video, rates);
  j["rates"] = {{"c_com_bps", rates.c_com}, {"c_cpt_bps", rates.c_cpt}};
  if (plan.no_observation()) j["warning"] = "no observation samples fit before t_cc";
  return j;
}

inline json report_to_json(const SimReport& report) {
  json j;
  j["trace_id"] = report.trace_id;
  j["rho_s"] = report.rho_s;
  j["average_doo"] = report.average_doo;
  j["average_qoe"] = report.average_qoe;
  j["cc_capability"] = report.cc_capability;
  j["plan"] = plan_to_json(report.plan);
  json segs = json::array();
  for (const auto& rec : report.segments) {
    segs.push_back({{"segment", rec.segment_index},
                    {"doo_term", rec.doo_term},
                    {"qoe_term", rec.qoe_term},
                    {"real_tiles", rec.real_set.cardinality()},
                    {"streamed_tiles", rec.streamed_set.cardinality()},
                    {"fallback", rec.fallback_triggered},
                    {"leaked", rec.leaked}});
  }
  j["segments"] = std::move(segs);
  return j;
}

/// Simulates every trace under trace_path and aggregates.
inline json cmd_simulate(const RunConfig& cfg, const std::vector<Trace>& traces) {
  cfg.validate();
  if (traces.empty()) throw std::runtime_error("simulate: no traces");
  const Rates rates = cfg.resolve_rates();
  const PrivacySpec spec(cfg.rho_s);
  const DurationPlan plan = optimize_durations(cfg.clock, cfg.tau, spec, cfg.video, rates);
  json reports = json::array();
  double qoe = 0.0, doo = 0.0;
  for (const auto& trace : traces) {
    const SimReport report =
        simulate_trace(trace, cfg.predictor, spec, plan, cfg.clock, cfg.video, rates, cfg.fov_diameter_deg);
    qoe += report.average_qoe;
    doo += report.average_doo;
    reports.push_back(report_to_json(report));
  }
  json j;
  j["aggregate"] = {{"trace_count", traces.size()},
                    {"average_qoe", qoe / static_cast<double>(traces.size())},
                    {"average_doo", doo / static_cast<double>(traces.size())},
                    {"rho_s", cfg.rho_s},
                    {"predictor", to_string(cfg.predictor)}};
  j["plan"] = plan_to_json(plan);
  j["traces"] = std::move(reports);
  return j;
}

/// Sweep matrix as CSV: one row per (rho_s, rcc) cell.
inline std::string cmd_sweep(const RunConfig& cfg, const std::vector<Trace>& traces) {
  cfg.validate();
  const Rates rates = cfg.resolve_rates();
  const auto cells = sweep(traces, cfg.predictor, cfg.rho_grid, cfg.rcc_grid, cfg.clock, cfg.tau, cfg.video,
                           rates, cfg.fov_diameter_deg);
  std::string out = "rho_s,rcc,avg_qoe,avg_doo,cc_capability,feasible\n";
  char buf[160];
  for (const auto& c : cells) {
    if (c.feasible)
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,%.9f,%.9f,%.9f,1\n", c.rho_s, c.rcc, c.avg_qoe, c.avg_doo,
                    c.cc_capability);
    else
      std::snprintf(buf, sizeof(buf), "%.6g,%.6g,,,,0\n", c.rho_s, c.rcc);
    out += buf;
  }
  return out;
}

/// Writes `count` synthetic traces as yaw_pitch_csv files under out_dir.
inline std::vector<std::filesystem::path> cmd_gen_traces(const RunConfig& cfg, int count,
                                                         const std::filesystem::path& out_dir) {
  cfg.validate();
  const auto traces = synth_traces(cfg.synth, count);
  std::filesystem::create_directories(out_dir);
  std::vector<std::filesystem::path> written;
  for (const auto& trace : traces) {
    auto path = out_dir / (trace.trace_id + ".csv");
    save_trace_file(trace, path);
    written.push_back(std::move(path));
  }
  return written;
}

/// One verdict table (all 12 canonical deployments) for the given
/// camouflage setting.
inline std::string cmd_classify_all(bool camouflage) {
  std::string out = "case,style,train_site,predict_site,training_upload,prediction_upload,"
                    "training,prediction\n";
  for (int n = 1; n <= 12; ++n) {
    const DeploymentCase c = canonical_case(n, camouflage);
    const DeploymentVerdict v = classify_deployment(c);
    out += std::to_string(n) + ',' + (c.style == PredictionStyle::direct ? "direct" : "indirect") + ',' +
           (c.train_site == Site::mec ? "mec" : c.train_site == Site::hmd ? "hmd" : "none") + ',' +
           (c.predict_site == Site::mec ? "mec" : "hmd") + ',' + to_string(c.training_upload) + ',' +
           to_string(c.prediction_upload) + ',' + to_string(v.training) + ',' + to_string(v.prediction) + '\n';
  }
  return out;
}

inline std::string cmd_classify_case(int number, bool camouflage) {
  const DeploymentCase c = canonical_case(number, camouflage);
  const DeploymentVerdict v = classify_deployment(c);
  return "training=" + to_string(v.training) + " prediction=" + to_string(v.prediction) + "\n";
}

}  // namespace fovguard
