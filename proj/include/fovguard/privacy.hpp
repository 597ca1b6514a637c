#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "fovguard/geometry.hpp"

namespace fovguard {

/// Spatial privacy requirement: the normalized number of camouflaged
/// tile requests the user demands, in [0, 1].
struct PrivacySpec {
  double rho_s = 0.0;

  PrivacySpec() = default;
  explicit PrivacySpec(double r) : rho_s(r) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("PrivacySpec: rho_s must be in [0, 1]");
  }
};

/// Number of camouflaged tiles implied by the privacy spec.
inline int camouflage_tile_count(const PrivacySpec& spec, int m, int n_fov) {
  if (n_fov < 1 || n_fov > m) throw std::out_of_range("camouflage_tile_count: n_fov out of range");
  return static_cast<int>(std::ceil(spec.rho_s * (m - n_fov)));
}

/// Overall tiles to render and transmit per segment: the predicted FoV
/// plus the camouflage demanded by rho_s.
inline int overall_tile_count(const PrivacySpec& spec, int m, int n_fov) {
  return n_fov + camouflage_tile_count(spec, m, n_fov);
}

/// Spatial degree of privacy achieved by n_cf camouflage tiles.
inline double sdop_of(int n_cf, int m, int n_fov) {
  if (m == n_fov) throw std::invalid_argument("sdop_of: undefined when the FoV covers the whole panorama");
  if (n_cf < 0 || n_cf > m - n_fov) throw std::invalid_argument("sdop_of: n_cf exceeds M - n_fov");
  return static_cast<double>(n_cf) / (m - n_fov);
}

/// Camouflage set around the predicted FoV, grown as contiguous rings.
/// Disjoint from the predicted set; cardinality ceil(rho_s * (M - n_fov)).
inline TileSet generate_camouflage(const TileGrid& grid, const TileSet& predicted, const PrivacySpec& spec,
                                   int n_fov) {
  if (predicted.cardinality() != n_fov)
    throw std::invalid_argument("generate_camouflage: predicted set cardinality must equal n_fov");
  const int n_cf = camouflage_tile_count(spec, grid.tile_count(), n_fov);
  return ring_expand(grid, predicted, n_cf);
}

enum class PredictionStyle { direct, indirect };
enum class Site { mec, hmd, none };
enum class UploadArtifact { real_tiles, predicted_tiles, real_viewpoints, predicted_viewpoints, model_params, none };

/// One deployment choice: where training and prediction run, what the
/// HMD uploads at each stage, and whether camouflage is applied.
struct DeploymentCase {
  PredictionStyle style = PredictionStyle::indirect;
  Site train_site = Site::none;
  Site predict_site = Site::hmd;
  UploadArtifact training_upload = UploadArtifact::none;
  UploadArtifact prediction_upload = UploadArtifact::predicted_tiles;
  bool camouflage_enabled = false;
};

enum class StageVerdict { protected_, leaked };

struct DeploymentVerdict {
  StageVerdict training;
  StageVerdict prediction;
};

inline void validate_case(const DeploymentCase& c) {
  if (c.train_site == Site::none && c.training_upload != UploadArtifact::none)
    throw std::invalid_argument("DeploymentCase: no training implies no training upload");
  if (c.train_site == Site::mec && (c.training_upload == UploadArtifact::model_params ||
                                    c.training_upload == UploadArtifact::none))
    throw std::invalid_argument("DeploymentCase: centralized training requires uploading real data");
  if (c.predict_site == Site::mec && c.prediction_upload != UploadArtifact::real_tiles &&
      c.prediction_upload != UploadArtifact::real_viewpoints)
    throw std::invalid_argument("DeploymentCase: predicting at the MEC requires uploading real data");
  if (c.predict_site == Site::none) throw std::invalid_argument("DeploymentCase: prediction must run somewhere");
}

namespace detail {

inline StageVerdict stage_verdict(UploadArtifact upload, bool camouflage) {
  switch (upload) {
    case UploadArtifact::real_viewpoints:
    case UploadArtifact::predicted_viewpoints:
      // Viewpoints cannot be camouflaged; uploading them always reveals the FoV.
      return StageVerdict::leaked;
    case UploadArtifact::real_tiles:
    case UploadArtifact::predicted_tiles:
      return camouflage ? StageVerdict::protected_ : StageVerdict::leaked;
    case UploadArtifact::model_params:
    case UploadArtifact::none:
      return StageVerdict::protected_;
  }
  throw std::logic_error("stage_verdict: unreachable");
}

}  // namespace detail

/// Leakage verdicts for the training and prediction stages of a deployment.
inline DeploymentVerdict classify_deployment(const DeploymentCase& c) {
  validate_case(c);
  return {detail::stage_verdict(c.training_upload, c.camouflage_enabled),
          detail::stage_verdict(c.prediction_upload, c.camouflage_enabled)};
}

/// The twelve canonical deployments (six direct, six indirect), with
/// uploads derived from the sites. With camouflage enabled, indirect
/// prediction at the HMD uploads camouflaged tile requests instead of
/// predicted viewpoints.
inline DeploymentCase canonical_case(int number, bool camouflage) {
  if (number < 1 || number > 12) throw std::out_of_range("canonical_case: number must be 1..12");
  DeploymentCase c;
  c.camouflage_enabled = camouflage;
  c.style = number <= 6 ? PredictionStyle::direct : PredictionStyle::indirect;
  const int local = (number - 1) % 6 + 1;  // 1..6 within each style block
  switch (local) {
    case 1: c.train_site = Site::mec; c.predict_site = Site::mec; break;
    case 2: c.train_site = Site::mec; c.predict_site = Site::hmd; break;
    case 3: c.train_site = Site::hmd; c.predict_site = Site::hmd; break;
    case 4: c.train_site = Site::hmd; c.predict_site = Site::mec; break;
    case 5: c.train_site = Site::none; c.predict_site = Site::mec; break;
    case 6: c.train_site = Site::none; c.predict_site = Site::hmd; break;
  }
  const bool direct = c.style == PredictionStyle::direct;
  if (c.train_site == Site::mec)
    c.training_upload = direct ? UploadArtifact::real_tiles : UploadArtifact::real_viewpoints;
  else if (c.train_site == Site::hmd)
    c.training_upload = UploadArtifact::model_params;
  else
    c.training_upload = UploadArtifact::none;
  if (c.predict_site == Site::mec)
    c.prediction_upload = direct ? UploadArtifact::real_tiles : UploadArtifact::real_viewpoints;
  else
    c.prediction_upload = (direct || camouflage) ? UploadArtifact::predicted_tiles
                                                 : UploadArtifact::predicted_viewpoints;
  return c;
}

inline std::string to_string(StageVerdict v) { return v == StageVerdict::protected_ ? "protected" : "leaked"; }

inline std::string to_string(UploadArtifact a) {
  switch (a) {
    case UploadArtifact::real_tiles: return "real_tiles";
    case UploadArtifact::predicted_tiles: return "predicted_tiles";
    case UploadArtifact::real_viewpoints: return "real_viewpoints";
    case UploadArtifact::predicted_viewpoints: return "predicted_viewpoints";
    case UploadArtifact::model_params: return "model_params";
    case UploadArtifact::none: return "none";
  }
  return "?";
}

}  // namespace fovguard
