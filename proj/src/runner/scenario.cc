/*
 * Copyright 2026 The Aerocine Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "aerocine/runner/scenario.h"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <numbers>
#include <set>
#include <sstream>

#include "aerocine/voxel_world/grid_io.h"

namespace aerocine {
namespace runner {
namespace {

using nlohmann::json;

constexpr double kDeg = std::numbers::pi / 180.0;

[[noreturn]] void Fail(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void CheckObject(const json& j, const std::string& path,
                 std::initializer_list<const char*> keys) {
  if (!j.is_object()) Fail(path, "expected an object");
  const std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) Fail(Join(path, key), "unknown key");
  }
}

const json& Require(const json& j, const std::string& path, const char* key) {
  if (!j.contains(key)) Fail(Join(path, key), "missing");
  return j.at(key);
}

double Number(const json& j, const std::string& path) {
  if (!j.is_number()) Fail(path, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) Fail(path, "expected a finite number");
  return v;
}

int64_t Integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) Fail(path, "expected an integer");
  return j.get<int64_t>();
}

double NumberOr(const json& j, const std::string& path, const char* key,
                double fallback) {
  return j.contains(key) ? Number(j.at(key), Join(path, key)) : fallback;
}

template <int N>
Eigen::Matrix<double, N, 1> Vector(const json& j, const std::string& path) {
  if (!j.is_array() || j.size() != N) {
    Fail(path, "expected an array of " + std::to_string(N) + " numbers");
  }
  Eigen::Matrix<double, N, 1> v;
  for (int i = 0; i < N; ++i) {
    v[i] = Number(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

const json& Array(const json& j, const std::string& path) {
  if (!j.is_array()) Fail(path, "expected an array");
  return j;
}

std::string Indexed(const std::string& path, size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

// Runs `parse`, prefixing library validation errors with the field path.
template <typename F>
void Checked(const std::string& path, F&& parse) {
  try {
    parse();
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    Fail(path, e.what());
  }
}

sim::WorldModel ParseWorld(const json& j, const std::string& path) {
  CheckObject(j, path, {"ground_z", "bounds", "boxes", "cylinders"});
  sim::WorldModel world;
  world.ground_z = NumberOr(j, path, "ground_z", 0.0);
  const std::string bpath = Join(path, "bounds");
  const json& bounds = Require(j, path, "bounds");
  CheckObject(bounds, bpath, {"min", "max"});
  world.bounds_min = Vector<3>(Require(bounds, bpath, "min"), Join(bpath, "min"));
  world.bounds_max = Vector<3>(Require(bounds, bpath, "max"), Join(bpath, "max"));
  if (j.contains("boxes")) {
    const std::string p = Join(path, "boxes");
    const json& boxes = Array(j.at("boxes"), p);
    for (size_t i = 0; i < boxes.size(); ++i) {
      const std::string bp = Indexed(p, i);
      CheckObject(boxes[i], bp, {"min", "max"});
      sim::Box box;
      box.min = Vector<3>(Require(boxes[i], bp, "min"), Join(bp, "min"));
      box.max = Vector<3>(Require(boxes[i], bp, "max"), Join(bp, "max"));
      world.boxes.push_back(box);
    }
  }
  if (j.contains("cylinders")) {
    const std::string p = Join(path, "cylinders");
    const json& cylinders = Array(j.at("cylinders"), p);
    for (size_t i = 0; i < cylinders.size(); ++i) {
      const std::string cp = Indexed(p, i);
      const json& c = cylinders[i];
      CheckObject(c, cp, {"center", "radius", "z_min", "z_max"});
      sim::Cylinder cyl;
      cyl.center = Vector<2>(Require(c, cp, "center"), Join(cp, "center"));
      cyl.radius = Number(Require(c, cp, "radius"), Join(cp, "radius"));
      cyl.z_min = NumberOr(c, cp, "z_min", world.ground_z);
      cyl.z_max = Number(Require(c, cp, "z_max"), Join(cp, "z_max"));
      world.cylinders.push_back(cyl);
    }
  }
  Checked(path, [&] { world.Validate(); });
  return world;
}

sim::ScriptedActor ParseActor(const json& j, const std::string& path) {
  CheckObject(j, path,
              {"kind", "path", "speed", "start_time", "points", "center",
               "radius", "start_angle_deg", "clockwise", "laps"});
  sim::ScriptedActor actor;
  if (j.contains("kind")) {
    const json& kind = j.at("kind");
    if (!kind.is_string()) Fail(Join(path, "kind"), "expected a string");
    Checked(Join(path, "kind"), [&] {
      actor.kind = forecast::ActorKindFromString(kind.get<std::string>());
    });
  }
  const json& type = Require(j, path, "path");
  const std::string type_name = type.is_string() ? type.get<std::string>() : "";
  actor.speed = Number(Require(j, path, "speed"), Join(path, "speed"));
  actor.start_time = NumberOr(j, path, "start_time", 0.0);
  if (type_name == "polyline") {
    actor.type = sim::PathType::kPolyline;
    const std::string p = Join(path, "points");
    const json& points = Array(Require(j, path, "points"), p);
    for (size_t i = 0; i < points.size(); ++i) {
      actor.points.push_back(Vector<3>(points[i], Indexed(p, i)));
    }
  } else if (type_name == "circle") {
    actor.type = sim::PathType::kCircle;
    actor.center = Vector<3>(Require(j, path, "center"), Join(path, "center"));
    actor.radius = Number(Require(j, path, "radius"), Join(path, "radius"));
    actor.start_angle = NumberOr(j, path, "start_angle_deg", 0.0) * kDeg;
    actor.laps = NumberOr(j, path, "laps", 1.0);
    if (j.contains("clockwise")) {
      if (!j.at("clockwise").is_boolean()) {
        Fail(Join(path, "clockwise"), "expected a boolean");
      }
      actor.counterclockwise = !j.at("clockwise").get<bool>();
    }
  } else {
    Fail(Join(path, "path"), "expected \"polyline\" or \"circle\"");
  }
  Checked(path, [&] { actor.Validate(); });
  return actor;
}

planner::ShotSpec ParseShot(const json& j, const std::string& path) {
  CheckObject(j, path, {"rho", "phi_rel_deg", "theta_rel_deg"});
  planner::ShotSpec shot;
  shot.rho = Number(Require(j, path, "rho"), Join(path, "rho"));
  shot.phi_rel = NumberOr(j, path, "phi_rel_deg", 0.0) * kDeg;
  shot.theta_rel = NumberOr(j, path, "theta_rel_deg", 0.0) * kDeg;
  Checked(path, [&] { shot.Validate(); });
  return shot;
}

sim::LidarModel ParseLidar(const json& j, const std::string& path,
                           double* pose_jitter) {
  CheckObject(j, path,
              {"channels", "fov_deg", "beams_per_revolution", "max_range",
               "rate", "pose_jitter"});
  sim::LidarModel lidar;
  if (j.contains("channels")) {
    lidar.channels = static_cast<int>(
        Integer(j.at("channels"), Join(path, "channels")));
  }
  if (j.contains("fov_deg")) {
    const double half = 0.5 * Number(j.at("fov_deg"), Join(path, "fov_deg"));
    lidar.min_elevation = -half * kDeg;
    lidar.max_elevation = half * kDeg;
  }
  if (j.contains("beams_per_revolution")) {
    lidar.beams_per_revolution = static_cast<int>(Integer(
        j.at("beams_per_revolution"), Join(path, "beams_per_revolution")));
  }
  lidar.max_range = NumberOr(j, path, "max_range", lidar.max_range);
  lidar.rate = NumberOr(j, path, "rate", lidar.rate);
  *pose_jitter = NumberOr(j, path, "pose_jitter", 0.0);
  if (*pose_jitter < 0.0) Fail(Join(path, "pose_jitter"), "must be >= 0");
  Checked(path, [&] { lidar.Validate(); });
  return lidar;
}

forecast::CameraIntrinsics ParseCamera(const json& j, const std::string& path) {
  CheckObject(j, path, {"fx", "fy", "cx", "cy", "width", "height"});
  forecast::CameraIntrinsics in;
  in.fx = NumberOr(j, path, "fx", in.fx);
  in.fy = NumberOr(j, path, "fy", in.fy);
  in.cx = NumberOr(j, path, "cx", in.cx);
  in.cy = NumberOr(j, path, "cy", in.cy);
  if (j.contains("width")) {
    in.width = static_cast<int>(Integer(j.at("width"), Join(path, "width")));
  }
  if (j.contains("height")) {
    in.height = static_cast<int>(Integer(j.at("height"), Join(path, "height")));
  }
  Checked(path, [&] { in.Validate(); });
  return in;
}

json ParseFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    const size_t end = std::min<size_t>(e.byte, text.size());
    size_t line = 1;
    size_t column = 1;
    for (size_t i = 0; i + 1 < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ConfigError(path.string() + ":" + std::to_string(line) + ":" +
                      std::to_string(column) + ": " + e.what());
  }
}

}  // namespace

int Scenario::cycle_count() const {
  return static_cast<int>(std::floor(duration / cycle_period + 1e-9));
}

int Scenario::waypoints_per_cycle() const {
  return static_cast<int>(
      std::lround(cycle_period / planner.waypoint_dt()));
}

void Scenario::Validate() const {
  if (!(duration >= 0.0)) Fail("duration", "must be >= 0");
  if (!(cycle_period > 0.0)) Fail("cycle_period", "must be > 0");
  const double ratio = cycle_period / planner.waypoint_dt();
  if (std::abs(ratio - std::round(ratio)) > 1e-9 || std::round(ratio) < 1.0 ||
      std::round(ratio) >= planner.waypoints - 1) {
    Fail("cycle_period",
         "must be a whole number of waypoint intervals shorter than the "
         "horizon");
  }
  if (!world.InBounds(drone_start)) Fail("drone.start", "outside the world");
  voxel_world::OccupancyGrid probe(grid);
  if (!probe.contains_point(drone_start)) {
    Fail("drone.start", "outside the grid");
  }
  if (takeoff.top_altitude > 0.0 &&
      !(takeoff.step > 0.0 && takeoff.start_altitude > 0.0)) {
    Fail("takeoff", "step and start_altitude must be > 0");
  }
  if (!(budget_ms > 0.0)) Fail("budget_ms", "must be > 0");
}

Scenario ScenarioFromJson(const json& j, const std::filesystem::path& base_dir) {
  CheckObject(j, "",
              {"name", "duration", "cycle_period", "seed", "world", "grid",
               "sdf", "lidar", "actor", "camera", "shot", "planner", "drone",
               "takeoff", "budget_ms"});
  Scenario s;
  const json& name = Require(j, "", "name");
  if (!name.is_string()) Fail("name", "expected a string");
  s.name = name.get<std::string>();
  s.duration = Number(Require(j, "", "duration"), "duration");
  s.cycle_period = NumberOr(j, "", "cycle_period", s.cycle_period);
  if (j.contains("seed")) {
    const int64_t seed = Integer(j.at("seed"), "seed");
    if (seed < 0) Fail("seed", "must be >= 0");
    s.seed = static_cast<uint64_t>(seed);
  }
  s.world = ParseWorld(Require(j, "", "world"), "world");
  Checked("grid", [&] {
    s.grid = voxel_world::GridConfigFromJson(Require(j, "", "grid"));
  });
  if (j.contains("sdf")) {
    CheckObject(j.at("sdf"), "sdf", {"truncation"});
    s.sdf.truncation = NumberOr(j.at("sdf"), "sdf", "truncation", 5.0);
  }
  Checked("sdf", [&] { s.sdf.Validate(s.grid.resolution); });
  if (j.contains("lidar")) {
    s.lidar = ParseLidar(j.at("lidar"), "lidar", &s.pose_jitter);
  }
  s.actor = ParseActor(Require(j, "", "actor"), "actor");
  if (j.contains("camera")) s.camera = ParseCamera(j.at("camera"), "camera");
  s.shot = ParseShot(Require(j, "", "shot"), "shot");
  if (j.contains("planner")) {
    const json& p = j.at("planner");
    if (p.is_string()) {
      const std::filesystem::path file = base_dir / p.get<std::string>();
      const json loaded = ParseFile(file);
      Checked("planner", [&] { s.planner = planner::PlannerConfigFromJson(loaded); });
    } else {
      Checked("planner", [&] { s.planner = planner::PlannerConfigFromJson(p); });
    }
  }
  const json& drone = Require(j, "", "drone");
  CheckObject(drone, "drone", {"start"});
  s.drone_start = Vector<3>(Require(drone, "drone", "start"), "drone.start");
  if (j.contains("takeoff")) {
    const json& t = j.at("takeoff");
    CheckObject(t, "takeoff", {"start_altitude", "top_altitude", "step"});
    s.takeoff.start_altitude =
        NumberOr(t, "takeoff", "start_altitude", s.takeoff.start_altitude);
    s.takeoff.top_altitude =
        NumberOr(t, "takeoff", "top_altitude", s.takeoff.top_altitude);
    s.takeoff.step = NumberOr(t, "takeoff", "step", s.takeoff.step);
  }
  s.budget_ms = NumberOr(j, "", "budget_ms", s.budget_ms);
  s.Validate();
  return s;
}

Scenario LoadScenario(const std::filesystem::path& path) {
  const json j = ParseFile(path);
  try {
    return ScenarioFromJson(j, path.parent_path());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

json ScenarioToJson(const Scenario& s) {
  json boxes = json::array();
  for (const auto& b : s.world.boxes) {
    boxes.push_back({{"min", {b.min.x(), b.min.y(), b.min.z()}},
                     {"max", {b.max.x(), b.max.y(), b.max.z()}}});
  }
  json cylinders = json::array();
  for (const auto& c : s.world.cylinders) {
    cylinders.push_back({{"center", {c.center.x(), c.center.y()}},
                         {"radius", c.radius},
                         {"z_min", c.z_min},
                         {"z_max", c.z_max}});
  }
  json actor = {{"kind", forecast::ToString(s.actor.kind)},
                {"speed", s.actor.speed},
                {"start_time", s.actor.start_time}};
  if (s.actor.type == sim::PathType::kPolyline) {
    actor["path"] = "polyline";
    json points = json::array();
    for (const auto& p : s.actor.points) points.push_back({p.x(), p.y(), p.z()});
    actor["points"] = points;
  } else {
    actor["path"] = "circle";
    actor["center"] = {s.actor.center.x(), s.actor.center.y(),
                       s.actor.center.z()};
    actor["radius"] = s.actor.radius;
    actor["start_angle_deg"] = s.actor.start_angle / kDeg;
    actor["clockwise"] = !s.actor.counterclockwise;
    actor["laps"] = s.actor.laps;
  }
  return json{
      {"name", s.name},
      {"duration", s.duration},
      {"cycle_period", s.cycle_period},
      {"seed", s.seed},
      {"world",
       {{"ground_z", s.world.ground_z},
        {"bounds",
         {{"min", {s.world.bounds_min.x(), s.world.bounds_min.y(),
                   s.world.bounds_min.z()}},
          {"max", {s.world.bounds_max.x(), s.world.bounds_max.y(),
                   s.world.bounds_max.z()}}}},
        {"boxes", boxes},
        {"cylinders", cylinders}}},
      {"grid", voxel_world::GridConfigToJson(s.grid)},
      {"sdf", {{"truncation", s.sdf.truncation}}},
      {"lidar",
       {{"channels", s.lidar.channels},
        {"fov_deg", (s.lidar.max_elevation - s.lidar.min_elevation) / kDeg},
        {"beams_per_revolution", s.lidar.beams_per_revolution},
        {"max_range", s.lidar.max_range},
        {"rate", s.lidar.rate},
        {"pose_jitter", s.pose_jitter}}},
      {"actor", actor},
      {"camera",
       {{"fx", s.camera.fx},
        {"fy", s.camera.fy},
        {"cx", s.camera.cx},
        {"cy", s.camera.cy},
        {"width", s.camera.width},
        {"height", s.camera.height}}},
      {"shot",
       {{"rho", s.shot.rho},
        {"phi_rel_deg", s.shot.phi_rel / kDeg},
        {"theta_rel_deg", s.shot.theta_rel / kDeg}}},
      {"planner", planner::PlannerConfigToJson(s.planner)},
      {"drone", {{"start", {s.drone_start.x(), s.drone_start.y(),
                            s.drone_start.z()}}}},
      {"takeoff",
       {{"start_altitude", s.takeoff.start_altitude},
        {"top_altitude", s.takeoff.top_altitude},
        {"step", s.takeoff.step}}},
      {"budget_ms", s.budget_ms}};
}

}  // namespace runner
}  // namespace aerocine
