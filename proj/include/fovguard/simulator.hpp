#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fovguard/geometry.hpp"
#include "fovguard/optimizer.hpp"
#include "fovguard/prediction.hpp"
#include "fovguard/privacy.hpp"
#include "fovguard/resources.hpp"
#include "fovguard/trace_io.hpp"

namespace fovguard {

/// Outcome of streaming one segment.
struct SegmentRecord {
  int segment_index = 0;
  TileSet real_set;       ///< q_l
  TileSet predicted_set;  ///< e_l
  TileSet streamed_set;   ///< s_l
  double doo_term = 0.0;
  double qoe_term = 0.0;
  bool leaked = false;
  bool fallback_triggered = false;
};

/// Aggregates for one simulated trace.
struct SimReport {
  std::string trace_id;
  std::vector<SegmentRecord> segments;
  double average_doo = 0.0;
  double average_qoe = 0.0;
  double cc_capability = 0.0;
  DurationPlan plan;
  double rho_s = 0.0;
};

/// Real tile requests q_l: the union of FoV footprints over all trace
/// samples falling in the segment's playback window.
inline TileSet real_request_set(const Trace& trace, int segment_index, const TileGrid& grid,
                                double fov_diameter_deg, double t_seg) {
  if (trace.samples.empty()) throw std::invalid_argument("real_request_set: empty trace");
  const double origin = trace.samples.front().t;
  const double start = origin + (segment_index - 1) * t_seg;
  const double end = origin + segment_index * t_seg;
  TileSet out(grid);
  bool any = false;
  for (const auto& vp : trace.samples) {
    if (vp.t < start - 1e-9 || vp.t >= end - 1e-9) continue;
    out = out | fov_tiles(grid, vp, fov_diameter_deg);
    any = true;
  }
  if (!any)
    throw std::invalid_argument("real_request_set: no samples in segment " + std::to_string(segment_index));
  return out;
}

/// Streaming decision under the capability budget. If the budget covers
/// predicted + camouflage, stream the union; otherwise stream only
/// predicted tiles truncated to the budget (camouflage dropped first),
/// which leaks the FoV.
inline std::pair<TileSet, bool> decide_streamed_set(const TileSet& predicted, const TileSet& camouflage,
                                                    int capability_tiles, int /*n_fov*/) {
  if (capability_tiles < 0) throw std::invalid_argument("decide_streamed_set: negative capability");
  const TileSet wanted = predicted | camouflage;
  if (capability_tiles >= wanted.cardinality()) return {wanted, false};
  TileSet out(predicted.grid());
  int budget = capability_tiles;
  for (int idx : predicted.indices()) {
    if (budget == 0) break;
    out.add(idx);
    --budget;
  }
  return {out, true};
}

/// Mean QoE term over records: fraction of truly requested tiles that
/// were streamed before playback.
inline double qoe_of_records(const std::vector<SegmentRecord>& records) {
  if (records.empty()) throw std::invalid_argument("qoe_of_records: empty input");
  double acc = 0.0;
  for (const auto& r : records) acc += r.qoe_term;
  return acc / static_cast<double>(records.size());
}

/// Per-segment proactive pipeline: observe, predict, camouflage, decide
/// what to stream, and score DoO/QoE against the real requests. The
/// observation window for segment l slides so that it ends t_cc + slack
/// before that segment's playback starts.
inline SimReport simulate_trace(const Trace& trace, PredictorKind predictor, const PrivacySpec& spec,
                                const DurationPlan& plan, const StreamClock& clock, const VideoConfig& video,
                                const Rates& rates, double fov_diameter_deg) {
  clock.validate();
  video.validate();
  if (trace.duration() + 1e-9 < clock.segments * clock.t_seg)
    throw std::invalid_argument("simulate_trace: trace shorter than L * T_seg");
  if (plan.n_obw_samples < 1)
    throw std::invalid_argument("simulate_trace: plan has no observation samples");

  const TileGrid& grid = video.grid;
  const int m = grid.tile_count();
  const TileBits bits = tile_bits(video);
  const double c_cc = cc_capability(plan.t_com, plan.t_cpt, rates, bits, m);
  const int capability_tiles = static_cast<int>(std::floor(c_cc * m + 1e-9));

  const Trace sampled = resample(trace, plan.tau);

  SimReport report;
  report.trace_id = trace.trace_id;
  report.plan = plan;
  report.rho_s = spec.rho_s;
  report.cc_capability = c_cc;

  const double t_b = sampled.samples.front().t;
  for (int l = clock.l0; l <= clock.segments; ++l) {
    const double segment_start = t_b + (l - 1) * clock.t_seg;
    const double window_end = t_b + (l - clock.l0) * clock.t_seg + plan.t_obw;

    ObservationWindow window;
    window.tau = plan.tau;
    for (const auto& vp : sampled.samples)
      if (vp.t <= window_end + 1e-9) window.samples.push_back(vp);
    // Keep the trailing n_obw_samples so the window spans exactly t_obw.
    const auto keep = static_cast<size_t>(plan.n_obw_samples);
    if (window.samples.size() > keep)
      window.samples.erase(window.samples.begin(),
                           window.samples.end() - static_cast<std::ptrdiff_t>(keep));
    if (window.samples.empty())
      throw std::invalid_argument("simulate_trace: empty observation window for segment " + std::to_string(l));

    PredictionRequest req;
    req.window = window;
    req.gap = segment_start - window.samples.back().t;
    req.horizon = clock.t_seg;
    req.sample_interval = plan.tau;
    const auto predicted_vps = predict(predictor, req);

    SegmentRecord rec;
    rec.segment_index = l;
    rec.real_set = real_request_set(trace, l, grid, fov_diameter_deg, clock.t_seg);
    rec.predicted_set = predicted_tile_set(predicted_vps, grid, video.n_fov);
    const TileSet camouflage = generate_camouflage(grid, rec.predicted_set, spec, video.n_fov);
    auto [streamed, fallback] = decide_streamed_set(rec.predicted_set, camouflage, capability_tiles, video.n_fov);
    rec.streamed_set = std::move(streamed);
    rec.fallback_triggered = fallback;
    rec.leaked = fallback || camouflage.empty();
    const int q = rec.real_set.cardinality();
    rec.doo_term = static_cast<double>(rec.real_set.overlap(rec.predicted_set)) / q;
    rec.qoe_term = static_cast<double>(rec.real_set.overlap(rec.streamed_set)) / q;
    report.segments.push_back(std::move(rec));
  }

  double doo = 0.0;
  for (const auto& r : report.segments) doo += r.doo_term;
  report.average_doo = doo / static_cast<double>(report.segments.size());
  report.average_qoe = qoe_of_records(report.segments);
  return report;
}

/// One cell of a sweep grid.
struct SweepCell {
  double rho_s = 0.0;
  double rcc = 0.0;          ///< requested maximized resources rate
  bool feasible = false;
  double avg_qoe = 0.0;
  double avg_doo = 0.0;
  double cc_capability = 0.0;
};

/// Sweeps (rho_s, R_cc*) cells: rates are scaled uniformly so the
/// maximized resources rate hits the requested value, durations are
/// re-optimized, and per-trace aggregates are averaged in trace order.
inline std::vector<SweepCell> sweep(const std::vector<Trace>& traces, PredictorKind predictor,
                                    const std::vector<double>& rho_grid, const std::vector<double>& rcc_grid,
                                    const StreamClock& clock, double tau, const VideoConfig& video,
                                    const Rates& base_rates, double fov_diameter_deg) {
  if (rho_grid.empty() || rcc_grid.empty()) throw std::invalid_argument("sweep: grids must be non-empty");
  if (traces.empty()) throw std::invalid_argument("sweep: no traces");
  const double base_rcc = max_resources_rate(video, base_rates);

  std::vector<SweepCell> cells;
  for (double rho : rho_grid) {
    for (double rcc : rcc_grid) {
      SweepCell cell;
      cell.rho_s = rho;
      cell.rcc = rcc;
      const double scale = rcc / base_rcc;
      const Rates rates{base_rates.c_com * scale, base_rates.c_cpt * scale};
      try {
        const PrivacySpec spec(rho);
        const DurationPlan plan = optimize_durations(clock, tau, spec, video, rates);
        if (plan.no_observation()) throw InfeasiblePlan("no observation samples");
        double qoe = 0.0, doo = 0.0, cc = 0.0;
        for (const auto& trace : traces) {
          const SimReport report = simulate_trace(trace, predictor, spec, plan, clock, video, rates,
                                                  fov_diameter_deg);
          qoe += report.average_qoe;
          doo += report.average_doo;
          cc = report.cc_capability;
        }
        cell.feasible = true;
        cell.avg_qoe = qoe / static_cast<double>(traces.size());
        cell.avg_doo = doo / static_cast<double>(traces.size());
        cell.cc_capability = cc;
      } catch (const InfeasiblePlan&) {
        cell.feasible = false;
      }
      cells.push_back(cell);
    }
  }
  return cells;
}

}  // namespace fovguard
