#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "skylink/scenario.hpp"

namespace skylink {

// Scenario file format:
//   {"gbs": [[x_m, y_m], ...], "start": [x, y], "goal": [x, y],
//    "uav_altitude_m": H, "gbs_altitude_m": HG, "max_speed_mps": V,
//    "ref_snr_db": G}
nlohmann::json scenario_to_json(const Scenario& scenario);
Scenario scenario_from_json(const nlohmann::json& doc);

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const Scenario& scenario, const std::filesystem::path& path);

// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace skylink
