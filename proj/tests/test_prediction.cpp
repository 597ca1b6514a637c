#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "fovguard/prediction.hpp"
#include "fovguard/trace_io.hpp"

using namespace fovguard;

namespace {

ObservationWindow make_window(std::initializer_list<Viewpoint> samples, double tau) {
  ObservationWindow w;
  w.samples = samples;
  w.tau = tau;
  return w;
}

}  // namespace

TEST_CASE("trivial_motion repeats the last observed viewpoint") {
  PredictionRequest req;
  req.window = make_window({{0.1, -0.2, 0.0}, {0.3, 0.1, 0.2}}, 0.2);
  req.gap = 0.5;
  req.horizon = 1.0;
  req.sample_interval = 0.2;
  const auto out = predict(PredictorKind::trivial_motion, req);
  REQUIRE(out.size() == 5);
  for (const auto& vp : out) {
    CHECK(vp.yaw == Catch::Approx(0.3));
    CHECK(vp.pitch == Catch::Approx(0.1));
  }
}

TEST_CASE("trivial_motion ignores all but the last sample") {
  PredictionRequest a;
  a.window = make_window({{0.9, 0.4, 0.0}, {-0.5, -0.3, 0.2}, {0.3, 0.1, 0.4}}, 0.2);
  PredictionRequest b;
  b.window = make_window({{-0.5, -0.3, 0.0}, {0.9, 0.4, 0.2}, {0.3, 0.1, 0.4}}, 0.2);
  const auto out_a = predict(PredictorKind::trivial_motion, a);
  const auto out_b = predict(PredictorKind::trivial_motion, b);
  REQUIRE(out_a.size() == out_b.size());
  for (size_t i = 0; i < out_a.size(); ++i) {
    CHECK(out_a[i].yaw == out_b[i].yaw);
    CHECK(out_a[i].pitch == out_b[i].pitch);
  }
}

TEST_CASE("linear_extrapolation integrates the last velocity") {
  const double tau = 0.2;
  PredictionRequest req;
  req.window = make_window({{0.0, 0.0, 0.0}, {0.1, 0.0, tau}}, tau);
  req.gap = 0.0;
  req.horizon = 2 * tau;
  req.sample_interval = tau;
  const auto out = predict(PredictorKind::linear_extrapolation, req);
  REQUIRE(out.size() == 2);
  CHECK(out[0].yaw == Catch::Approx(0.2));
  CHECK(out[1].yaw == Catch::Approx(0.3));
}

TEST_CASE("linear_extrapolation with zero velocity is constant") {
  PredictionRequest req;
  req.window = make_window({{0.4, -0.1, 0.0}, {0.4, -0.1, 0.2}}, 0.2);
  req.gap = 1.0;
  req.horizon = 1.0;
  req.sample_interval = 0.2;
  for (const auto& vp : predict(PredictorKind::linear_extrapolation, req)) {
    CHECK(vp.yaw == Catch::Approx(0.4));
    CHECK(vp.pitch == Catch::Approx(-0.1));
  }
}

TEST_CASE("linear_extrapolation wraps yaw and clamps pitch") {
  PredictionRequest req;
  req.window = make_window({{3.0, 1.4, 0.0}, {3.1, 1.5, 0.2}}, 0.2);
  req.gap = 0.0;
  req.horizon = 1.0;
  req.sample_interval = 0.2;
  for (const auto& vp : predict(PredictorKind::linear_extrapolation, req)) {
    CHECK(vp.yaw >= -kPi);
    CHECK(vp.yaw < kPi);
    CHECK(vp.pitch <= kPi / 2);
  }
}

TEST_CASE("predict error paths") {
  PredictionRequest req;
  req.window = make_window({{0.0, 0.0, 0.0}}, 0.2);
  CHECK_NOTHROW(predict(PredictorKind::trivial_motion, req));
  CHECK_THROWS_AS(predict(PredictorKind::linear_extrapolation, req), std::invalid_argument);
  PredictionRequest empty;
  empty.window.tau = 0.2;
  CHECK_THROWS_AS(predict(PredictorKind::trivial_motion, empty), std::invalid_argument);
}

TEST_CASE("predicted_tile_set anchors at the midpoint") {
  TileGrid g(10, 20);
  std::vector<Viewpoint> single{{0.0, 0.0, 1.0}};
  CHECK(predicted_tile_set(single, g, 33) == top_n_tiles(g, single[0], 33));
  CHECK(predicted_tile_set(single, g, 200).cardinality() == 200);
  CHECK_THROWS_AS(predicted_tile_set({}, g, 33), std::invalid_argument);

  std::vector<Viewpoint> five{{0.0, 0.0, 0.0}, {0.1, 0.0, 0.2}, {0.2, 0.0, 0.4}, {0.3, 0.0, 0.6},
                              {0.4, 0.0, 0.8}};
  CHECK(predicted_tile_set(five, g, 33) == top_n_tiles(g, five[2], 33));
}

TEST_CASE("average_doo basics") {
  TileGrid g(6, 10);
  TileSet a(g), b(g), c(g);
  for (int i : {1, 2, 3, 4, 5, 6, 7, 8}) a.add(i);
  for (int i : {1, 2, 3, 4, 21, 22, 23, 24}) b.add(i);
  for (int i : {51, 52}) c.add(i);

  CHECK(average_doo({a}, {a}) == Catch::Approx(1.0));
  CHECK(average_doo({a}, {c}) == Catch::Approx(0.0));
  CHECK(average_doo({a}, {b}) == Catch::Approx(0.5));
  CHECK(average_doo({a, a}, {a, c}) == Catch::Approx(0.5));
  CHECK_THROWS_AS(average_doo({a}, {a, b}), std::invalid_argument);
  CHECK_THROWS_AS(average_doo({TileSet(g)}, {a}), std::invalid_argument);
  CHECK_THROWS_AS(average_doo({}, {}), std::invalid_argument);
}

TEST_CASE("average_doo hits 1 exactly when every real tile is predicted") {
  TileGrid g(6, 10);
  TileSet real(g), sup(g);
  for (int i : {11, 12, 13}) real.add(i);
  for (int i : {11, 12, 13, 14, 15}) sup.add(i);
  CHECK(average_doo({real}, {sup}) == 1.0);
  TileSet missing = sup;
  missing.remove(11);
  CHECK(average_doo({real}, {missing}) < 1.0);
}

TEST_CASE("trivial_motion accuracy degrades with gap on random-walk traces") {
  // Mean DoO over 50 synthetic traces at a short gap should beat the
  // mean at a long gap by more than -2 percentage points.
  TileGrid g(10, 20);
  SynthParams params;
  params.seed = 99;
  params.duration = 20.0;
  const auto traces = synth_traces(params, 50);

  auto mean_doo = [&](double gap) {
    double acc = 0.0;
    for (const auto& trace : traces) {
      std::vector<TileSet> real, predicted;
      for (double t0 = 2.0; t0 + 1.0 <= 20.0; t0 += 1.0) {
        // Real set: top-N at the true viewpoint at the segment midpoint.
        Viewpoint truth;
        Viewpoint observed;
        for (const auto& vp : trace.samples) {
          if (vp.t <= t0 + 0.5) truth = vp;
          if (vp.t <= t0 - gap) observed = vp;
        }
        real.push_back(top_n_tiles(g, truth, 33));
        predicted.push_back(top_n_tiles(g, observed, 33));
      }
      acc += average_doo(real, predicted);
    }
    return acc / 50.0;
  };

  CHECK(mean_doo(0.2) >= mean_doo(1.5) - 0.02);
}
