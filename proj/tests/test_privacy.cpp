#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "fovguard/privacy.hpp"

using namespace fovguard;

namespace {

TileSet fig3_seed(const TileGrid& g) {
  TileSet s(g);
  for (int i : {24, 25, 26, 27, 34, 35, 36, 37}) s.add(i);
  return s;
}

}  // namespace

TEST_CASE("overall_tile_count endpoints and ceiling") {
  CHECK(overall_tile_count(PrivacySpec(0.0), 200, 33) == 33);
  CHECK(overall_tile_count(PrivacySpec(1.0), 200, 33) == 200);
  CHECK(overall_tile_count(PrivacySpec(16.0 / 52.0), 60, 8) == 24);
  CHECK_THROWS_AS(overall_tile_count(PrivacySpec(0.5), 200, 0), std::out_of_range);
  CHECK_THROWS_AS(overall_tile_count(PrivacySpec(0.5), 200, 201), std::out_of_range);
}

TEST_CASE("overall_tile_count is non-decreasing in rho_s") {
  int prev = 0;
  for (int i = 0; i <= 100; ++i) {
    const int n = overall_tile_count(PrivacySpec(i / 100.0), 200, 33);
    CHECK(n >= prev);
    prev = n;
  }
  CHECK(prev == 200);
}

TEST_CASE("sdop_of reproduces the example ratios") {
  CHECK(sdop_of(16, 60, 8) == Catch::Approx(16.0 / 52.0));  // displayed 31%
  CHECK(sdop_of(34, 60, 8) == Catch::Approx(34.0 / 52.0));  // displayed 65%
  CHECK(sdop_of(0, 60, 8) == 0.0);
  CHECK_THROWS_AS(sdop_of(53, 60, 8), std::invalid_argument);
  CHECK_THROWS_AS(sdop_of(0, 60, 60), std::invalid_argument);
}

TEST_CASE("generate_camouflage borderline region") {
  TileGrid g(6, 10);
  auto predicted = fig3_seed(g);
  auto camo = generate_camouflage(g, predicted, PrivacySpec(16.0 / 52.0), 8);
  TileSet expected(g);
  for (int i : {13, 14, 15, 16, 17, 18, 23, 28, 33, 38, 43, 44, 45, 46, 47, 48}) expected.add(i);
  CHECK(camo == expected);
}

TEST_CASE("generate_camouflage endpoints") {
  TileGrid g(6, 10);
  auto predicted = fig3_seed(g);
  CHECK(generate_camouflage(g, predicted, PrivacySpec(0.0), 8).empty());
  auto full = generate_camouflage(g, predicted, PrivacySpec(1.0), 8);
  CHECK(full.cardinality() == 52);
  CHECK(full.is_disjoint_from(predicted));
  CHECK_THROWS_AS(generate_camouflage(g, predicted, PrivacySpec(0.5), 9), std::invalid_argument);
}

TEST_CASE("camouflage round-trips through sdop_of with ceiling slack only") {
  TileGrid g(6, 10);
  auto predicted = fig3_seed(g);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> rho_dist(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const PrivacySpec spec(rho_dist(rng));
    auto camo = generate_camouflage(g, predicted, spec, 8);
    CHECK(sdop_of(camo.cardinality(), 60, 8) >= spec.rho_s - 1e-12);
    CHECK((camo | predicted).cardinality() == overall_tile_count(spec, 60, 8));
    const double exact = spec.rho_s * 52.0;
    if (std::abs(exact - std::round(exact)) < 1e-9)
      CHECK(sdop_of(camo.cardinality(), 60, 8) == Catch::Approx(spec.rho_s));
  }
}

TEST_CASE("classification: leakage without camouflage matches the 12 canonical cases") {
  // Training leaks only when real data is uploaded (cases 1, 2, 7, 8);
  // prediction always leaks without camouflage.
  for (int n = 1; n <= 12; ++n) {
    const auto v = classify_deployment(canonical_case(n, false));
    const bool training_leaks = n == 1 || n == 2 || n == 7 || n == 8;
    CHECK(v.training == (training_leaks ? StageVerdict::leaked : StageVerdict::protected_));
    CHECK(v.prediction == StageVerdict::leaked);
  }
}

TEST_CASE("classification: protection with camouflage matches the 12 canonical cases") {
  // Only the indirect cases that upload real viewpoints stay leaked.
  for (int n = 1; n <= 12; ++n) {
    const auto v = classify_deployment(canonical_case(n, true));
    const bool training_leaks = n == 7 || n == 8;
    const bool prediction_leaks = n == 7 || n == 10 || n == 11;
    CHECK(v.training == (training_leaks ? StageVerdict::leaked : StageVerdict::protected_));
    CHECK(v.prediction == (prediction_leaks ? StageVerdict::leaked : StageVerdict::protected_));
  }
}

TEST_CASE("classification: named rows") {
  // Federated training, on-device prediction, camouflaged uploads.
  auto v9 = classify_deployment(canonical_case(9, true));
  CHECK(v9.training == StageVerdict::protected_);
  CHECK(v9.prediction == StageVerdict::protected_);

  // Uploading real viewpoints is never protected, camouflage or not.
  auto v7 = classify_deployment(canonical_case(7, true));
  CHECK(v7.training == StageVerdict::leaked);
  CHECK(v7.prediction == StageVerdict::leaked);

  auto v1 = classify_deployment(canonical_case(1, false));
  CHECK(v1.training == StageVerdict::leaked);
  CHECK(v1.prediction == StageVerdict::leaked);
}

TEST_CASE("classification rejects inconsistent cases") {
  DeploymentCase c;
  c.train_site = Site::none;
  c.training_upload = UploadArtifact::real_viewpoints;
  CHECK_THROWS_AS(classify_deployment(c), std::invalid_argument);

  DeploymentCase d;
  d.train_site = Site::mec;
  d.training_upload = UploadArtifact::model_params;
  CHECK_THROWS_AS(classify_deployment(d), std::invalid_argument);

  DeploymentCase e;
  e.train_site = Site::none;
  e.training_upload = UploadArtifact::none;
  e.predict_site = Site::mec;
  e.prediction_upload = UploadArtifact::predicted_tiles;
  CHECK_THROWS_AS(classify_deployment(e), std::invalid_argument);
}

TEST_CASE("prediction stage is protected exactly for camouflaged tile uploads") {
  for (bool camo : {false, true}) {
    for (auto upload : {UploadArtifact::real_tiles, UploadArtifact::predicted_tiles,
                        UploadArtifact::real_viewpoints, UploadArtifact::predicted_viewpoints}) {
      DeploymentCase c;
      c.style = PredictionStyle::indirect;
      c.train_site = Site::hmd;
      c.training_upload = UploadArtifact::model_params;
      c.predict_site = (upload == UploadArtifact::real_tiles || upload == UploadArtifact::real_viewpoints)
                           ? Site::mec
                           : Site::hmd;
      c.prediction_upload = upload;
      c.camouflage_enabled = camo;
      const auto v = classify_deployment(c);
      const bool tiles = upload == UploadArtifact::real_tiles || upload == UploadArtifact::predicted_tiles;
      CHECK((v.prediction == StageVerdict::protected_) == (camo && tiles));
    }
  }
}
