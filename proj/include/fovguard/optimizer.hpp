#pragma once

#include <cmath>
#include <stdexcept>

#include "fovguard/privacy.hpp"
#include "fovguard/resources.hpp"

namespace fovguard {

/// Proactive streaming clock: the first proactively streamed segment
/// index l0 and the segment layout. T_ps = (l0 - 1) * T_seg.
struct StreamClock {
  int l0 = 3;
  double t_seg = 1.0;
  int segments = 60;  ///< L

  double t_ps() const { return (l0 - 1) * t_seg; }

  void validate() const {
    if (l0 < 2 || l0 > segments) throw std::invalid_argument("StreamClock: need 2 <= l0 <= L");
    if (t_seg <= 0.0) throw std::invalid_argument("StreamClock: t_seg must be positive");
  }
};

/// Split of the proactive streaming time among observation, computing
/// and communication. The flooring remainder of the observation window
/// is recorded as idle slack so the durations always sum to T_ps.
struct DurationPlan {
  double t_obw = 0.0;
  double t_com = 0.0;
  double t_cpt = 0.0;
  double slack = 0.0;
  double t_ps = 0.0;
  double tau = 0.0;
  int n_obw_samples = 0;
  int n_p = 0;  ///< tiles to stream per segment

  double t_cc() const { return t_com + t_cpt; }
  /// No observation sample fits before t_cc; prediction degenerates.
  bool no_observation() const { return n_obw_samples == 0; }
};

/// Thrown when the configured resources cannot satisfy the required
/// SDoP within the proactive streaming time (t_cc* > T_ps).
struct InfeasiblePlan : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Closed-form optimal durations: t_com* = s_com N_p / C_com,
/// t_cpt* = s_cpt N_p / C_cpt, and the observation window takes the
/// rest in whole tau steps. Satisfies C_cc(t_com*, t_cpt*) * M = N_p.
inline DurationPlan optimize_durations(const StreamClock& clock, double tau, const PrivacySpec& spec,
                                       const VideoConfig& video, const Rates& rates) {
  clock.validate();
  video.validate();
  rates.validate();
  if (tau <= 0.0) throw std::invalid_argument("optimize_durations: tau must be positive");

  const int m = video.grid.tile_count();
  const int n_p = overall_tile_count(spec, m, video.n_fov);
  const TileBits bits = tile_bits(video);

  DurationPlan plan;
  plan.t_ps = clock.t_ps();
  plan.tau = tau;
  plan.n_p = n_p;
  plan.t_com = bits.s_com * n_p / rates.c_com;
  plan.t_cpt = bits.s_cpt * n_p / rates.c_cpt;
  const double t_cc = plan.t_com + plan.t_cpt;
  if (t_cc > plan.t_ps)
    throw InfeasiblePlan("optimize_durations: t_cc* exceeds T_ps; SDoP cannot be met");
  plan.n_obw_samples = static_cast<int>(std::floor((plan.t_ps - t_cc) / tau + 1e-12));
  plan.t_obw = plan.n_obw_samples * tau;
  plan.slack = plan.t_ps - plan.t_obw - t_cc;
  return plan;
}

/// Maximized resources rate 1 / (s_com M / C_com + s_cpt M / C_cpt);
/// independent of the privacy requirement.
inline double max_resources_rate(const VideoConfig& video, const Rates& rates) {
  rates.validate();
  const TileBits bits = tile_bits(video);
  const int m = video.grid.tile_count();
  return 1.0 / (bits.s_com * m / rates.c_com + bits.s_cpt * m / rates.c_cpt);
}

/// Grid-search oracle for optimize_durations: enumerates (t_com, t_cpt)
/// pairs on the grid whose capability covers N_p to within the rounding
/// of one half grid step per duration, and returns the pair leaving the
/// longest observation window. The half-step slop keeps the returned
/// t_obw within one grid step of the continuous optimum. Test use only.
inline DurationPlan brute_force_plan(const StreamClock& clock, double tau, const PrivacySpec& spec,
                                     const VideoConfig& video, const Rates& rates, double grid_step) {
  clock.validate();
  video.validate();
  rates.validate();
  if (grid_step <= 0.0) throw std::invalid_argument("brute_force_plan: grid step must be positive");

  const int m = video.grid.tile_count();
  const int n_p = overall_tile_count(spec, m, video.n_fov);
  const TileBits bits = tile_bits(video);
  const double t_ps = clock.t_ps();
  const int steps = static_cast<int>(std::floor(t_ps / grid_step + 1e-9));

  // Tiles deliverable per half grid step on each resource.
  const double slop_com = rates.c_com * grid_step / bits.s_com / 2.0;
  const double slop_cpt = rates.c_cpt * grid_step / bits.s_cpt / 2.0;

  bool found = false;
  DurationPlan best;
  for (int i = 0; i <= steps; ++i) {
    const double t_com = i * grid_step;
    if (rates.c_com * t_com / bits.s_com + slop_com + 1e-9 < n_p) continue;
    for (int j = 0; i + j <= steps; ++j) {
      const double t_cpt = j * grid_step;
      if (rates.c_cpt * t_cpt / bits.s_cpt + slop_cpt + 1e-9 < n_p) continue;
      const double t_obw = t_ps - t_com - t_cpt;
      if (!found || t_obw > best.t_obw) {
        found = true;
        best.t_obw = t_obw;
        best.t_com = t_com;
        best.t_cpt = t_cpt;
      }
    }
  }
  if (!found) throw InfeasiblePlan("brute_force_plan: no feasible plan on grid");
  best.t_ps = t_ps;
  best.tau = tau;
  best.n_p = n_p;
  best.n_obw_samples = static_cast<int>(std::floor(best.t_obw / tau + 1e-12));
  best.slack = 0.0;
  return best;
}

}  // namespace fovguard
