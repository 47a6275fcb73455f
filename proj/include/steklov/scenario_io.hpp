#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "steklov/core.hpp"
#include "steklov/mesh.hpp"

namespace steklov {

// Placement of point excisions in a flat torus [0, L)^2, used by the
// finite-element runs. Not part of the model-side scenario.
struct TorusGeometry {
  double L = 1.0;
  std::vector<fem::Vec2> centers;
};

struct ScenarioFile {
  ExcisionScenario scenario;
  std::optional<TorusGeometry> torus;
};

/// {"m", "lambda1_M", "submanifolds": [{"dim", "volume", "kind": {"type", ...}}],
///  optional "separations" and "torus": {"L", "centers"}}. Kind types:
/// point, circle (length), round_sphere (dim, radius), flat_torus (sides).
ScenarioFile scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const ScenarioFile& file);
ScenarioFile load_scenario(const std::string& path);

// Unit flat torus minus two points at (1/4, 1/4) and (3/4, 3/4).
ScenarioFile torus_two_points();
// Round unit sphere minus two antipodal points.
ExcisionScenario sphere_two_points();

} // namespace steklov
