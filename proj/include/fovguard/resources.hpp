#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

#include "fovguard/geometry.hpp"

namespace fovguard {

/// Video encoding parameters from which per-tile bit sizes derive.
struct VideoConfig {
  int px_w = 192;           ///< pixels per tile, horizontal
  int px_h = 216;           ///< pixels per tile, vertical
  int bits_per_pixel = 12;
  double frame_rate = 30.0;  ///< frames/s
  double t_seg = 1.0;        ///< segment playback duration, s
  double gamma_c = 2.41;     ///< compression ratio, >= 1
  TileGrid grid{10, 20};
  int n_fov = 33;            ///< tiles in one FoV

  void validate() const {
    if (px_w <= 0 || px_h <= 0 || bits_per_pixel <= 0 || frame_rate <= 0.0 || t_seg <= 0.0)
      throw std::invalid_argument("VideoConfig: dimensions, bit depth, frame rate, t_seg must be positive");
    if (gamma_c < 1.0) throw std::invalid_argument("VideoConfig: compression ratio must be >= 1");
    if (n_fov < 1 || n_fov > grid.tile_count())
      throw std::invalid_argument("VideoConfig: n_fov must be in [1, M]");
  }
};

/// Downlink channel parameters for the ensemble-average rate model.
struct ChannelConfig {
  double bandwidth_hz = 150e6;
  double total_power_w = 0.251;  ///< 24 dBm
  int n_antennas = 8;
  int n_users = 4;
  double distance_m = 5.0;
  double path_loss_exp = 2.0;
  double noise_power_w = 1e-10;
  double slot_s = 1e-3;  ///< slot duration, unused by the ensemble average

  void validate() const {
    if (n_users < 1 || n_antennas < n_users)
      throw std::invalid_argument("ChannelConfig: need N_t >= K >= 1");
    if (bandwidth_hz < 0.0 || total_power_w <= 0.0 || distance_m <= 0.0 || noise_power_w <= 0.0)
      throw std::invalid_argument("ChannelConfig: parameters must be positive");
  }
};

/// Rendering capacity parameters.
struct ComputeConfig {
  double flops = 2.2e9;       ///< configured FLOPS at the server
  double flops_per_bit = 1.0; ///< rendering cost per bit
  int n_users = 1;

  void validate() const {
    if (flops <= 0.0 || flops_per_bit <= 0.0 || n_users < 1)
      throw std::invalid_argument("ComputeConfig: parameters must be positive");
  }
};

/// Ensemble-average transmission and computing rates, bits/s.
struct Rates {
  double c_com = 0.0;
  double c_cpt = 0.0;

  void validate() const {
    if (c_com <= 0.0 || c_cpt <= 0.0) throw std::invalid_argument("Rates: rates must be positive");
  }
};

struct TileBits {
  double s_com = 0.0;  ///< bits per tile for transmission (compressed)
  double s_cpt = 0.0;  ///< bits per tile for rendering (raw)
};

/// Per-tile bit sizes: s_cpt = px_w * px_h * b * r_f * T_seg, s_com = s_cpt / gamma_c.
inline TileBits tile_bits(const VideoConfig& cfg) {
  cfg.validate();
  const double s_cpt = static_cast<double>(cfg.px_w) * cfg.px_h * cfg.bits_per_pixel * cfg.frame_rate * cfg.t_seg;
  return {s_cpt / cfg.gamma_c, s_cpt};
}

/// Per-user computing rate F_cpt / (K * mu_r), bits/s.
inline double computing_rate(const ComputeConfig& cfg) {
  cfg.validate();
  return cfg.flops / (cfg.n_users * cfg.flops_per_bit);
}

namespace detail {

/// Uniform in (0, 1) from the full 64-bit state, platform-stable.
inline double uniform01(std::uint64_t bits) {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace detail

/// Monte-Carlo estimate of the per-user ensemble-average rate
/// E{B log2(1 + p d^-alpha |h|^2 / sigma^2)} under zero-forcing, where
/// |h|^2 ~ Gamma(N_t - K + 1, 1) and p = P_total / K.
/// Gamma draws are sums of Exp(1) variates so results are bit-stable
/// for a fixed seed across standard library implementations.
inline double ensemble_average_rate(const ChannelConfig& cfg, std::uint64_t seed, int draws = 100000) {
  cfg.validate();
  if (draws < 1) throw std::invalid_argument("ensemble_average_rate: draws must be >= 1");
  const int shape = cfg.n_antennas - cfg.n_users + 1;
  const double p = cfg.total_power_w / cfg.n_users;
  const double snr_scale = p * std::pow(cfg.distance_m, -cfg.path_loss_exp) / cfg.noise_power_w;
  std::mt19937_64 rng(seed);
  double acc = 0.0;
  for (int i = 0; i < draws; ++i) {
    double gain = 0.0;
    for (int j = 0; j < shape; ++j) gain += -std::log(detail::uniform01(rng()));
    acc += std::log2(1.0 + snr_scale * gain);
  }
  return cfg.bandwidth_hz * acc / draws;
}

/// CC capability: fraction of a segment's M tiles the configured rates
/// can render and transmit in the given durations, in [0, 1].
inline double cc_capability(double t_com, double t_cpt, const Rates& rates, const TileBits& bits, int m) {
  if (t_com < 0.0 || t_cpt < 0.0) throw std::invalid_argument("cc_capability: durations must be non-negative");
  rates.validate();
  const double tiles = std::min({rates.c_com * t_com / bits.s_com, rates.c_cpt * t_cpt / bits.s_cpt,
                                 static_cast<double>(m)});
  return tiles / m;
}

/// Resources rate: CC capability per unit of communication+computing time.
inline double resources_rate(double c_cc, double t_cc) {
  if (t_cc <= 0.0) throw std::invalid_argument("resources_rate: t_cc must be positive");
  return c_cc / t_cc;
}

}  // namespace fovguard
