#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fovguard/geometry.hpp"

namespace fovguard {

/// Trailing window of observed viewpoints sampled at interval tau.
struct ObservationWindow {
  std::vector<Viewpoint> samples;
  double tau = 0.0;

  double t_obw() const { return static_cast<double>(samples.size()) * tau; }

  void validate() const {
    if (samples.empty()) throw std::invalid_argument("ObservationWindow: empty window");
    if (tau <= 0.0) throw std::invalid_argument("ObservationWindow: tau must be positive");
    for (size_t i = 1; i < samples.size(); ++i) {
      if (std::abs(samples[i].t - samples[i - 1].t - tau) > 1e-9)
        throw std::invalid_argument("ObservationWindow: samples must be spaced by tau");
    }
  }
};

/// Inputs to one prediction: the window, the gap until the prediction
/// window starts (the communication+computing time), and the horizon.
struct PredictionRequest {
  ObservationWindow window;
  double gap = 0.0;              ///< t_cc, seconds
  double horizon = 1.0;          ///< T_pdw = T_seg, seconds
  double sample_interval = 0.2;  ///< spacing of predicted samples

  void validate() const {
    window.validate();
    if (gap < 0.0) throw std::invalid_argument("PredictionRequest: gap must be >= 0");
    if (horizon <= 0.0 || sample_interval <= 0.0)
      throw std::invalid_argument("PredictionRequest: horizon and sample_interval must be positive");
  }
};

enum class PredictorKind { trivial_motion, linear_extrapolation };

inline PredictorKind predictor_from_string(const std::string& s) {
  if (s == "trivial_motion") return PredictorKind::trivial_motion;
  if (s == "linear_extrapolation") return PredictorKind::linear_extrapolation;
  throw std::invalid_argument("unknown predictor: " + s);
}

inline std::string to_string(PredictorKind k) {
  return k == PredictorKind::trivial_motion ? "trivial_motion" : "linear_extrapolation";
}

/// Predicts ceil(horizon / sample_interval) viewpoints covering the
/// prediction window. trivial_motion repeats the last observed sample;
/// linear_extrapolation integrates the angular velocity of the last two
/// samples across gap + horizon, wrapping yaw and clamping pitch.
inline std::vector<Viewpoint> predict(PredictorKind kind, const PredictionRequest& req) {
  req.validate();
  const auto n_out = static_cast<size_t>(std::ceil(req.horizon / req.sample_interval - 1e-12));
  const Viewpoint& last = req.window.samples.back();
  std::vector<Viewpoint> out;
  out.reserve(n_out);

  double yaw_rate = 0.0;
  double pitch_rate = 0.0;
  if (kind == PredictorKind::linear_extrapolation) {
    if (req.window.samples.size() < 2)
      throw std::invalid_argument("linear_extrapolation needs at least 2 samples");
    const Viewpoint& prev = req.window.samples[req.window.samples.size() - 2];
    const double dt = last.t - prev.t;
    yaw_rate = wrap_yaw(last.yaw - prev.yaw) / dt;  // shortest-arc
    pitch_rate = (last.pitch - prev.pitch) / dt;
  }

  for (size_t i = 0; i < n_out; ++i) {
    const double ahead = req.gap + static_cast<double>(i + 1) * req.sample_interval;
    Viewpoint vp;
    vp.t = last.t + ahead;
    vp.yaw = wrap_yaw(last.yaw + yaw_rate * ahead);
    vp.pitch = std::clamp(last.pitch + pitch_rate * ahead, -kPi / 2.0, kPi / 2.0);
    out.push_back(vp);
  }
  return out;
}

/// Predicted tile set e_l for a segment: top-N tiles around the
/// predicted viewpoint at the segment midpoint.
inline TileSet predicted_tile_set(const std::vector<Viewpoint>& predicted, const TileGrid& grid, int n_fov) {
  if (predicted.empty()) throw std::invalid_argument("predicted_tile_set: empty prediction");
  const Viewpoint& anchor = predicted[(predicted.size() - 1) / 2];
  return top_n_tiles(grid, anchor, n_fov);
}

/// Average segment degree of overlap between real and predicted tile
/// sets, normalized by the real request count, in [0, 1].
inline double average_doo(const std::vector<TileSet>& real, const std::vector<TileSet>& predicted) {
  if (real.empty() || real.size() != predicted.size())
    throw std::invalid_argument("average_doo: lists must be non-empty and the same length");
  double acc = 0.0;
  for (size_t l = 0; l < real.size(); ++l) {
    const int q = real[l].cardinality();
    if (q == 0) throw std::invalid_argument("average_doo: empty real set");
    acc += static_cast<double>(real[l].overlap(predicted[l])) / q;
  }
  return acc / static_cast<double>(real.size());
}

}  // namespace fovguard
