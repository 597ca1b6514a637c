#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "fovguard/optimizer.hpp"
#include "fovguard/prediction.hpp"
#include "fovguard/resources.hpp"
#include "fovguard/trace_io.hpp"

namespace fovguard {

using json = nlohmann::ordered_json;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fully resolved run configuration. Rates come either directly or from
/// channel + compute models, never both. Angles in config files are
/// degrees; everything internal is radians.
struct RunConfig {
  VideoConfig video;
  std::optional<Rates> rates;
  std::optional<ChannelConfig> channel;
  std::optional<ComputeConfig> compute;
  StreamClock clock;
  double tau = 0.2;
  double rho_s = 0.0;
  std::vector<double> rho_grid;
  std::vector<double> rcc_grid;
  PredictorKind predictor = PredictorKind::trivial_motion;
  double fov_diameter_deg = 100.0;
  std::uint64_t seed = 1;
  int rate_draws = 100000;
  SynthParams synth;
  TraceFormat trace_format = TraceFormat::yaw_pitch_csv;

  /// Resolves effective rates, evaluating the channel model if needed.
  Rates resolve_rates() const {
    if (rates) return *rates;
    Rates r;
    r.c_com = ensemble_average_rate(*channel, seed, rate_draws);
    r.c_cpt = computing_rate(*compute);
    return r;
  }

  void validate() const {
    const bool direct = rates.has_value();
    const bool modeled = channel.has_value() && compute.has_value();
    if (direct == modeled)
      throw ConfigError("config: exactly one of 'rates' or 'channel'+'compute' must be present");
    if (direct) rates->validate();
    if (modeled) {
      channel->validate();
      compute->validate();
    }
    video.validate();
    clock.validate();
    if (tau <= 0.0) throw ConfigError("config: tau_s must be positive");
    if (rho_s < 0.0 || rho_s > 1.0) throw ConfigError("config: rho_s must be in [0, 1]");
    if (fov_diameter_deg < 0.0 || fov_diameter_deg > 360.0)
      throw ConfigError("config: fov_diameter_deg must be in [0, 360]");
    for (double r : rho_grid)
      if (r < 0.0 || r > 1.0) throw ConfigError("config: rho_grid values must be in [0, 1]");
    for (double r : rcc_grid)
      if (r <= 0.0) throw ConfigError("config: rcc_grid values must be positive");
  }
};

namespace detail {

template <typename T>
void read_field(const json& j, const char* key, T& out) {
  if (j.contains(key)) {
    try {
      out = j.at(key).get<T>();
    } catch (const json::exception&) {
      throw ConfigError(std::string("config: bad value for '") + key + "'");
    }
  }
}

}  // namespace detail

/// Table III defaults: 10x20 grid, 3840x2160 at 12 bpp and 30 FPS,
/// gamma_c 2.41, N_fov 33, with the reference 2.85 / 2.2 Gbps rates.
inline RunConfig default_config() {
  RunConfig cfg;
  cfg.rates = Rates{2.85e9, 2.2e9};
  cfg.clock = StreamClock{3, cfg.video.t_seg, 60};
  cfg.rho_grid = {0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  cfg.rcc_grid = {0.6, 1.0, 1.4, 2.0};
  return cfg;
}

inline RunConfig config_from_json(const json& j) {
  RunConfig cfg = default_config();
  if (j.contains("video")) {
    const auto& v = j.at("video");
    detail::read_field(v, "px_w", cfg.video.px_w);
    detail::read_field(v, "px_h", cfg.video.px_h);
    detail::read_field(v, "bits_per_pixel", cfg.video.bits_per_pixel);
    detail::read_field(v, "frame_rate", cfg.video.frame_rate);
    detail::read_field(v, "t_seg_s", cfg.video.t_seg);
    detail::read_field(v, "gamma_c", cfg.video.gamma_c);
    detail::read_field(v, "rows", cfg.video.grid.rows);
    detail::read_field(v, "cols", cfg.video.grid.cols);
    detail::read_field(v, "n_fov", cfg.video.n_fov);
    cfg.clock.t_seg = cfg.video.t_seg;
  }
  if (j.contains("rates")) {
    Rates r;
    detail::read_field(j.at("rates"), "c_com_bps", r.c_com);
    detail::read_field(j.at("rates"), "c_cpt_bps", r.c_cpt);
    cfg.rates = r;
  }
  if (j.contains("channel")) {
    ChannelConfig ch;
    const auto& c = j.at("channel");
    detail::read_field(c, "bandwidth_hz", ch.bandwidth_hz);
    detail::read_field(c, "total_power_w", ch.total_power_w);
    detail::read_field(c, "n_antennas", ch.n_antennas);
    detail::read_field(c, "n_users", ch.n_users);
    detail::read_field(c, "distance_m", ch.distance_m);
    detail::read_field(c, "path_loss_exp", ch.path_loss_exp);
    detail::read_field(c, "noise_power_w", ch.noise_power_w);
    detail::read_field(c, "slot_s", ch.slot_s);
    cfg.channel = ch;
    cfg.rates.reset();
  }
  if (j.contains("compute")) {
    ComputeConfig cp;
    const auto& c = j.at("compute");
    detail::read_field(c, "flops", cp.flops);
    detail::read_field(c, "flops_per_bit", cp.flops_per_bit);
    detail::read_field(c, "n_users", cp.n_users);
    cfg.compute = cp;
    if (j.contains("channel")) cfg.rates.reset();
  }
  if (j.contains("clock")) {
    detail::read_field(j.at("clock"), "l0", cfg.clock.l0);
    detail::read_field(j.at("clock"), "segments", cfg.clock.segments);
  }
  detail::read_field(j, "tau_s", cfg.tau);
  detail::read_field(j, "rho_s", cfg.rho_s);
  detail::read_field(j, "rho_grid", cfg.rho_grid);
  detail::read_field(j, "rcc_grid", cfg.rcc_grid);
  if (j.contains("predictor")) cfg.predictor = predictor_from_string(j.at("predictor").get<std::string>());
  detail::read_field(j, "fov_diameter_deg", cfg.fov_diameter_deg);
  detail::read_field(j, "seed", cfg.seed);
  detail::read_field(j, "rate_draws", cfg.rate_draws);
  if (j.contains("synth")) {
    const auto& s = j.at("synth");
    detail::read_field(s, "duration_s", cfg.synth.duration);
    detail::read_field(s, "interval_s", cfg.synth.interval);
    detail::read_field(s, "yaw_rate_std", cfg.synth.yaw_rate_std);
    detail::read_field(s, "pitch_rate_std", cfg.synth.pitch_rate_std);
    detail::read_field(s, "persistence", cfg.synth.persistence);
  }
  if (j.contains("trace_format")) {
    const auto f = j.at("trace_format").get<std::string>();
    if (f == "yaw_pitch_csv")
      cfg.trace_format = TraceFormat::yaw_pitch_csv;
    else if (f == "quaternion_csv")
      cfg.trace_format = TraceFormat::quaternion_csv;
    else
      throw ConfigError("config: unknown trace_format '" + f + "'");
  }
  cfg.synth.seed = cfg.seed;
  return cfg;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError("config: parse error in " + path + ": " + e.what());
  }
  return config_from_json(j);
}

inline json config_to_json(const RunConfig& cfg) {
  json j;
  j["video"] = {{"px_w", cfg.video.px_w},
                {"px_h", cfg.video.px_h},
                {"bits_per_pixel", cfg.video.bits_per_pixel},
                {"frame_rate", cfg.video.frame_rate},
                {"t_seg_s", cfg.video.t_seg},
                {"gamma_c", cfg.video.gamma_c},
                {"rows", cfg.video.grid.rows},
                {"cols", cfg.video.grid.cols},
                {"n_fov", cfg.video.n_fov}};
  if (cfg.rates) j["rates"] = {{"c_com_bps", cfg.rates->c_com}, {"c_cpt_bps", cfg.rates->c_cpt}};
  if (cfg.channel)
    j["channel"] = {{"bandwidth_hz", cfg.channel->bandwidth_hz},
                    {"total_power_w", cfg.channel->total_power_w},
                    {"n_antennas", cfg.channel->n_antennas},
                    {"n_users", cfg.channel->n_users},
                    {"distance_m", cfg.channel->distance_m},
                    {"path_loss_exp", cfg.channel->path_loss_exp},
                    {"noise_power_w", cfg.channel->noise_power_w},
                    {"slot_s", cfg.channel->slot_s}};
  if (cfg.compute)
    j["compute"] = {{"flops", cfg.compute->flops},
                    {"flops_per_bit", cfg.compute->flops_per_bit},
                    {"n_users", cfg.compute->n_users}};
  j["clock"] = {{"l0", cfg.clock.l0}, {"segments", cfg.clock.segments}};
  j["tau_s"] = cfg.tau;
  j["rho_s"] = cfg.rho_s;
  j["rho_grid"] = cfg.rho_grid;
  j["rcc_grid"] = cfg.rcc_grid;
  j["predictor"] = to_string(cfg.predictor);
  j["fov_diameter_deg"] = cfg.fov_diameter_deg;
  j["seed"] = cfg.seed;
  j["rate_draws"] = cfg.rate_draws;
  j["synth"] = {{"duration_s", cfg.synth.duration},
                {"interval_s", cfg.synth.interval},
                {"yaw_rate_std", cfg.synth.yaw_rate_std},
                {"pitch_rate_std", cfg.synth.pitch_rate_std},
                {"persistence", cfg.synth.persistence}};
  j["trace_format"] = cfg.trace_format == TraceFormat::yaw_pitch_csv ? "yaw_pitch_csv" : "quaternion_csv";
  return j;
}

}  // namespace fovguard
