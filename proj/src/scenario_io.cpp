#include "steklov/scenario_io.hpp"

#include <cmath>
#include <fstream>
#include <numbers>

#include "steklov/errors.hpp"

namespace steklov {

namespace {

using nlohmann::json;

SubmanifoldSpec submanifold_from_json(const json& j) {
  SubmanifoldSpec s;
  s.dim = j.at("dim").get<int>();
  s.volume = j.at("volume").get<double>();
  const json& kind = j.at("kind");
  const auto type = kind.at("type").get<std::string>();
  if (type == "point") s.kind = PointKind{};
  else if (type == "circle") s.kind = CircleKind{kind.at("length").get<double>()};
  else if (type == "round_sphere") s.kind = RoundSphereKind{kind.at("dim").get<int>(), kind.at("radius").get<double>()};
  else if (type == "flat_torus") s.kind = FlatTorusKind{kind.at("sides").get<std::vector<double>>()};
  else throw ConfigurationError("scenario: unsupported kind '" + type + "'");
  return s;
}

json kind_to_json(const SpectrumKind& kind) {
  if (std::holds_alternative<PointKind>(kind)) return {{"type", "point"}};
  if (const auto* c = std::get_if<CircleKind>(&kind)) return {{"type", "circle"}, {"length", c->length}};
  if (const auto* r = std::get_if<RoundSphereKind>(&kind))
    return {{"type", "round_sphere"}, {"dim", r->dim}, {"radius", r->radius}};
  return {{"type", "flat_torus"}, {"sides", std::get<FlatTorusKind>(kind).sides}};
}

} // namespace

ScenarioFile scenario_from_json(const json& j) {
  ScenarioFile f;
  try {
    f.scenario.m = j.at("m").get<int>();
    f.scenario.lambda1_M = j.at("lambda1_M").get<double>();
    for (const auto& s : j.at("submanifolds")) f.scenario.submanifolds.push_back(submanifold_from_json(s));
    if (j.contains("separations")) f.scenario.separations = j.at("separations").get<std::vector<double>>();
    if (j.contains("torus")) {
      TorusGeometry t;
      t.L = j.at("torus").at("L").get<double>();
      for (const auto& c : j.at("torus").at("centers")) t.centers.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
      f.torus = t;
    }
  } catch (const json::exception& e) {
    throw ConfigurationError(std::string("scenario: ") + e.what());
  }
  f.scenario.validate();
  if (f.torus) {
    if (f.scenario.m != 2) throw ConfigurationError("scenario: torus geometry requires m = 2");
    if (static_cast<int>(f.torus->centers.size()) != f.scenario.count())
      throw ConfigurationError("scenario: one torus center per submanifold is required");
    for (const auto& s : f.scenario.submanifolds)
      if (!s.is_point()) throw ConfigurationError("scenario: torus geometry only supports point excisions");
  }
  return f;
}

json scenario_to_json(const ScenarioFile& file) {
  json j;
  j["m"] = file.scenario.m;
  j["lambda1_M"] = file.scenario.lambda1_M;
  j["submanifolds"] = json::array();
  for (const auto& s : file.scenario.submanifolds)
    j["submanifolds"].push_back({{"dim", s.dim}, {"volume", s.volume}, {"kind", kind_to_json(s.kind)}});
  if (!file.scenario.separations.empty()) j["separations"] = file.scenario.separations;
  if (file.torus) {
    json centers = json::array();
    for (const auto& c : file.torus->centers) centers.push_back({c[0], c[1]});
    j["torus"] = {{"L", file.torus->L}, {"centers", centers}};
  }
  return j;
}

ScenarioFile load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigurationError("scenario: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigurationError("scenario: " + path + ": " + e.what());
  }
  return scenario_from_json(j);
}

ScenarioFile torus_two_points() {
  ScenarioFile f;
  f.scenario.m = 2;
  f.scenario.lambda1_M = 4.0 * std::numbers::pi * std::numbers::pi;
  f.scenario.submanifolds = {SubmanifoldSpec::point(), SubmanifoldSpec::point()};
  f.scenario.separations = {std::sqrt(0.125)};
  f.torus = TorusGeometry{1.0, {{0.25, 0.25}, {0.75, 0.75}}};
  return f;
}

ExcisionScenario sphere_two_points() {
  ExcisionScenario s;
  s.m = 2;
  s.lambda1_M = 2.0;
  s.submanifolds = {SubmanifoldSpec::point(), SubmanifoldSpec::point()};
  s.separations = {std::numbers::pi};
  return s;
}

} // namespace steklov
