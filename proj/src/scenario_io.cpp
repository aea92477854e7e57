#include "skylink/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <system_error>

#include "skylink/errors.hpp"

namespace skylink {

using nlohmann::json;

namespace {

json point_json(Point p) { return json::array({p.x, p.y}); }

Point point_from(const json& value, const char* field) {
  if (!value.is_array() || value.size() != 2 || !value[0].is_number() || !value[1].is_number()) {
    throw PlanningError(ErrorCode::InvalidArgument,
                        std::string("field '") + field + "' must be a [x, y] pair");
  }
  return {value[0].get<double>(), value[1].get<double>()};
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) {
    throw PlanningError(ErrorCode::InvalidArgument,
                        std::string("scenario is missing field '") + field + "'");
  }
  return *it;
}

double number(const json& doc, const char* field) {
  const json& v = require(doc, field);
  if (!v.is_number()) {
    throw PlanningError(ErrorCode::InvalidArgument,
                        std::string("field '") + field + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace

json scenario_to_json(const Scenario& scenario) {
  json gbs = json::array();
  for (const Point& g : scenario.gbs) gbs.push_back(point_json(g));
  return json{{"gbs", gbs},
              {"start", point_json(scenario.start)},
              {"goal", point_json(scenario.goal)},
              {"uav_altitude_m", scenario.uav_altitude},
              {"gbs_altitude_m", scenario.gbs_altitude},
              {"max_speed_mps", scenario.max_speed},
              {"ref_snr_db", to_db(scenario.ref_snr)}};
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) {
    throw PlanningError(ErrorCode::InvalidArgument, "scenario document must be a JSON object");
  }
  Scenario s;
  const json& gbs = require(doc, "gbs");
  if (!gbs.is_array()) {
    throw PlanningError(ErrorCode::InvalidArgument, "field 'gbs' must be an array");
  }
  for (const json& g : gbs) s.gbs.push_back(point_from(g, "gbs"));
  s.start = point_from(require(doc, "start"), "start");
  s.goal = point_from(require(doc, "goal"), "goal");
  s.uav_altitude = number(doc, "uav_altitude_m");
  s.gbs_altitude = number(doc, "gbs_altitude_m");
  s.max_speed = number(doc, "max_speed_mps");
  s.ref_snr = from_db(number(doc, "ref_snr_db"));
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw PlanningError(ErrorCode::Io, "cannot open scenario file " + path.string());
  }
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw PlanningError(ErrorCode::Io, "malformed scenario file " + path.string() + ": " + e.what());
  }
  return scenario_from_json(doc);
}

void save_scenario(const Scenario& scenario, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw PlanningError(ErrorCode::Io, "cannot write " + path.string());
  }
  out << scenario_to_json(scenario).dump(2) << '\n';
}

std::string format_double(double value) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, end);
}

}  // namespace skylink
