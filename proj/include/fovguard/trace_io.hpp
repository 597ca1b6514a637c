#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fovguard/geometry.hpp"

namespace fovguard {

/// A head-movement trace: time-ordered viewpoints from one user/video.
struct Trace {
  std::string trace_id;
  std::string user_id;
  std::string video_id;
  std::vector<Viewpoint> samples;
  double native_interval = 0.0;

  double duration() const { return samples.empty() ? 0.0 : samples.back().t - samples.front().t; }

  void validate() const {
    for (size_t i = 0; i < samples.size(); ++i) {
      const auto& vp = samples[i];
      if (vp.yaw < -kPi || vp.yaw >= kPi + 1e-12 || vp.pitch < -kPi / 2 - 1e-12 || vp.pitch > kPi / 2 + 1e-12)
        throw std::invalid_argument("Trace " + trace_id + ": viewpoint out of range at sample " +
                                    std::to_string(i));
      if (i > 0 && samples[i].t <= samples[i - 1].t)
        throw std::invalid_argument("Trace " + trace_id + ": non-monotone timestamps at sample " +
                                    std::to_string(i));
    }
  }
};

enum class TraceFormat { yaw_pitch_csv, quaternion_csv };

namespace detail {

inline std::vector<double> parse_csv_row(const std::string& line, size_t expect, const std::string& file,
                                         int lineno) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
    } catch (const std::exception&) {
      throw std::runtime_error(file + ":" + std::to_string(lineno) + ": malformed value '" + cell + "'");
    }
  }
  if (out.size() != expect)
    throw std::runtime_error(file + ":" + std::to_string(lineno) + ": expected " + std::to_string(expect) +
                             " columns, got " + std::to_string(out.size()));
  return out;
}

/// Z-Y intrinsic decomposition of a unit quaternion; roll discarded.
inline Viewpoint quaternion_to_viewpoint(double qw, double qx, double qy, double qz) {
  const double norm = std::sqrt(qw * qw + qx * qx + qy * qy + qz * qz);
  if (std::abs(norm - 1.0) > 1e-3) throw std::runtime_error("non-unit quaternion");
  qw /= norm; qx /= norm; qy /= norm; qz /= norm;
  Viewpoint vp;
  vp.yaw = wrap_yaw(std::atan2(2.0 * (qw * qz + qx * qy), 1.0 - 2.0 * (qy * qy + qz * qz)));
  const double sinp = 2.0 * (qw * qy - qz * qx);
  vp.pitch = std::abs(sinp) >= 1.0 ? std::copysign(kPi / 2.0, sinp) : std::asin(sinp);
  return vp;
}

}  // namespace detail

/// Parses one trace CSV. Schemas (header row mandatory):
///   yaw_pitch_csv:   t_s,yaw_rad,pitch_rad
///   quaternion_csv:  t_s,qw,qx,qy,qz
inline Trace load_trace_file(const std::filesystem::path& path, TraceFormat format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  Trace trace;
  trace.trace_id = path.stem().string();
  trace.user_id = path.stem().string();
  trace.video_id = path.parent_path().filename().string();

  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": missing header row");
  ++lineno;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (format == TraceFormat::yaw_pitch_csv) {
      const auto row = detail::parse_csv_row(line, 3, path.string(), lineno);
      trace.samples.push_back({row[1], row[2], row[0]});
    } else {
      const auto row = detail::parse_csv_row(line, 5, path.string(), lineno);
      Viewpoint vp;
      try {
        vp = detail::quaternion_to_viewpoint(row[1], row[2], row[3], row[4]);
      } catch (const std::exception& e) {
        throw std::runtime_error(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
      }
      vp.t = row[0];
      trace.samples.push_back(vp);
    }
  }
  if (trace.samples.size() >= 2) trace.native_interval = trace.samples[1].t - trace.samples[0].t;
  trace.validate();
  return trace;
}

/// Loads every .csv under path (recursively; layout <dataset>/<video_id>/<user_id>.csv).
/// An empty directory yields an empty list.
inline std::vector<Trace> load_traces(const std::filesystem::path& path, TraceFormat format) {
  std::vector<Trace> traces;
  if (std::filesystem::is_regular_file(path)) {
    traces.push_back(load_trace_file(path, format));
    return traces;
  }
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(path))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  for (const auto& f : files) traces.push_back(load_trace_file(f, format));
  return traces;
}

inline void save_trace_file(const Trace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "t_s,yaw_rad,pitch_rad\n";
  char buf[96];
  for (const auto& vp : trace.samples) {
    std::snprintf(buf, sizeof(buf), "%.9f,%.9f,%.9f\n", vp.t, vp.yaw, vp.pitch);
    out << buf;
  }
}

/// Resamples a trace at exact multiples of tau, interpolating linearly
/// in pitch and along the shortest yaw arc.
inline Trace resample(const Trace& trace, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("resample: tau must be positive");
  if (trace.samples.empty() || trace.duration() < tau)
    throw std::invalid_argument("resample: trace shorter than tau");
  Trace out;
  out.trace_id = trace.trace_id;
  out.user_id = trace.user_id;
  out.video_id = trace.video_id;
  out.native_interval = tau;

  const double t0 = trace.samples.front().t;
  const double t1 = trace.samples.back().t;
  size_t cursor = 0;
  for (int k = 0;; ++k) {
    const double t = t0 + k * tau;
    if (t > t1 + 1e-9) break;
    const double tc = std::min(t, t1);
    while (cursor + 1 < trace.samples.size() && trace.samples[cursor + 1].t < tc) ++cursor;
    const auto& a = trace.samples[cursor];
    const auto& b = trace.samples[std::min(cursor + 1, trace.samples.size() - 1)];
    Viewpoint vp;
    vp.t = t0 + k * tau;
    if (b.t <= a.t) {
      vp.yaw = a.yaw;
      vp.pitch = a.pitch;
    } else {
      const double f = std::clamp((tc - a.t) / (b.t - a.t), 0.0, 1.0);
      vp.yaw = wrap_yaw(a.yaw + f * wrap_yaw(b.yaw - a.yaw));
      vp.pitch = a.pitch + f * (b.pitch - a.pitch);
    }
    out.samples.push_back(vp);
  }
  return out;
}

/// Parameters for the synthetic AR(1) angular-velocity random walk.
struct SynthParams {
  std::uint64_t seed = 1;
  double duration = 60.0;   ///< seconds
  double interval = 0.2;    ///< seconds between samples
  double yaw_rate_std = 0.5;    ///< stationary std of yaw rate, rad/s
  double pitch_rate_std = 0.2;  ///< stationary std of pitch rate, rad/s
  double persistence = 0.9;     ///< AR(1) coefficient, in [0, 1)

  void validate() const {
    if (duration <= 0.0 || interval <= 0.0)
      throw std::invalid_argument("SynthParams: duration and interval must be positive");
    if (persistence < 0.0 || persistence >= 1.0)
      throw std::invalid_argument("SynthParams: persistence must be in [0, 1)");
    if (yaw_rate_std < 0.0 || pitch_rate_std < 0.0)
      throw std::invalid_argument("SynthParams: rate stds must be non-negative");
  }
};

namespace detail {

/// Box-Muller on raw engine output, platform-stable.
inline double standard_normal(std::mt19937_64& rng) {
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

}  // namespace detail

/// Generates seeded synthetic traces: angular velocities follow AR(1)
/// with the given lag-1 autocorrelation and stationary std; pitch is
/// reflected at the poles, yaw wraps.
inline std::vector<Trace> synth_traces(const SynthParams& params, int count) {
  params.validate();
  if (count < 0) throw std::invalid_argument("synth_traces: count must be >= 0");
  std::vector<Trace> out;
  out.reserve(static_cast<size_t>(count));
  // Samples cover [0, duration): 60 s at 0.2 s yields 300 samples.
  const auto n_samples = static_cast<size_t>(std::floor(params.duration / params.interval + 1e-9));
  const double p = params.persistence;
  const double innov = std::sqrt(1.0 - p * p);

  for (int i = 0; i < count; ++i) {
    std::mt19937_64 rng(params.seed + static_cast<std::uint64_t>(i) * 0x9e3779b97f4a7c15ULL);
    Trace trace;
    trace.trace_id = "synth_" + std::to_string(i);
    trace.user_id = trace.trace_id;
    trace.video_id = "synthetic";
    trace.native_interval = params.interval;

    double yaw = wrap_yaw((detail::standard_normal(rng)) * 0.5);
    double pitch = std::clamp(detail::standard_normal(rng) * 0.2, -kPi / 2, kPi / 2);
    double yaw_rate = detail::standard_normal(rng) * params.yaw_rate_std;
    double pitch_rate = detail::standard_normal(rng) * params.pitch_rate_std;
    for (size_t k = 0; k < n_samples; ++k) {
      trace.samples.push_back({yaw, pitch, static_cast<double>(k) * params.interval});
      yaw_rate = p * yaw_rate + innov * params.yaw_rate_std * detail::standard_normal(rng);
      pitch_rate = p * pitch_rate + innov * params.pitch_rate_std * detail::standard_normal(rng);
      yaw = wrap_yaw(yaw + yaw_rate * params.interval);
      pitch += pitch_rate * params.interval;
      if (pitch > kPi / 2) { pitch = kPi - pitch; pitch_rate = -pitch_rate; }
      if (pitch < -kPi / 2) { pitch = -kPi - pitch; pitch_rate = -pitch_rate; }
    }
    trace.validate();
    out.push_back(std::move(trace));
  }
  return out;
}

/// Seeded 80/20 train/test split by trace id. Metadata only; no
/// training happens here.
struct TraceSplit {
  std::vector<std::string> train;
  std::vector<std::string> test;
};

inline TraceSplit split_traces(const std::vector<Trace>& traces, std::uint64_t seed, double train_ratio = 0.8) {
  std::vector<std::string> ids;
  ids.reserve(traces.size());
  for (const auto& t : traces) ids.push_back(t.trace_id);
  std::mt19937_64 rng(seed);
  std::shuffle(ids.begin(), ids.end(), rng);
  const auto n_train = static_cast<size_t>(std::llround(train_ratio * static_cast<double>(ids.size())));
  TraceSplit split;
  split.train.assign(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(n_train));
  split.test.assign(ids.begin() + static_cast<std::ptrdiff_t>(n_train), ids.end());
  return split;
}

}  // namespace fovguard
