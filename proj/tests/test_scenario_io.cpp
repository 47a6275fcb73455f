#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "steklov/bounds.hpp"
#include "steklov/errors.hpp"
#include "steklov/scenario_io.hpp"

using namespace steklov;
using nlohmann::json;

TEST(ScenarioIo, RoundTrip) {
  const auto f = torus_two_points();
  const json j = scenario_to_json(f);
  const auto g = scenario_from_json(j);
  EXPECT_EQ(g.scenario.m, 2);
  EXPECT_EQ(g.scenario.count(), 2);
  EXPECT_EQ(g.scenario.lambda1_M, f.scenario.lambda1_M);
  ASSERT_TRUE(g.torus.has_value());
  EXPECT_EQ(g.torus->centers, f.torus->centers);
  EXPECT_EQ(scenario_to_json(g), j);
}

TEST(ScenarioIo, AllKinds) {
  const json j = json::parse(R"({
    "m": 5, "lambda1_M": 1.5,
    "submanifolds": [
      {"dim": 0, "volume": 1, "kind": {"type": "point"}},
      {"dim": 1, "volume": 3.0, "kind": {"type": "circle", "length": 3.0}},
      {"dim": 2, "volume": 12.566370614359172, "kind": {"type": "round_sphere", "dim": 2, "radius": 1.0}},
      {"dim": 2, "volume": 2.0, "kind": {"type": "flat_torus", "sides": [1.0, 2.0]}}
    ]})");
  const auto f = scenario_from_json(j);
  EXPECT_EQ(f.scenario.count(), 4);
  EXPECT_FALSE(f.torus.has_value());
  EXPECT_EQ(scenario_from_json(scenario_to_json(f)).scenario.submanifolds.size(), 4u);
}

TEST(ScenarioIo, Errors) {
  EXPECT_THROW(scenario_from_json(json::parse(R"({"m": 2})")), ConfigurationError);
  EXPECT_THROW(scenario_from_json(json::parse(
                   R"({"m": 2, "lambda1_M": 1, "submanifolds": [{"dim": 0, "volume": 1, "kind": {"type": "cone"}}]})")),
               ConfigurationError);
  // Codimension below 2.
  EXPECT_THROW(scenario_from_json(json::parse(
                   R"({"m": 2, "lambda1_M": 1, "submanifolds": [{"dim": 1, "volume": 1, "kind": {"type": "circle", "length": 1}}]})")),
               ConfigurationError);
  auto j = scenario_to_json(torus_two_points());
  j["torus"]["centers"].erase(1);
  EXPECT_THROW(scenario_from_json(j), ConfigurationError);
  EXPECT_THROW(load_scenario("/nonexistent/scenario.json"), ConfigurationError);
}

TEST(ScenarioIo, PresetsMatchShippedFiles) {
  const auto dir = std::string(SCENARIO_DIR);
  EXPECT_EQ(scenario_to_json(load_scenario(dir + "/torus_two_points.json")), scenario_to_json(torus_two_points()));
  const auto sphere = load_scenario(dir + "/sphere_two_points.json").scenario;
  EXPECT_EQ(scenario_to_json({sphere, {}}), scenario_to_json({sphere_two_points(), {}}));
  EXPECT_NEAR(constant_C(torus_two_points().scenario).constant_C, std::numbers::pi * std::numbers::pi / 128, 1e-15);
  EXPECT_NO_THROW(load_scenario(dir + "/point_and_circle_in_s3.json"));
}
