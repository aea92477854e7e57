#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "skylink/association.hpp"
#include "skylink/scenario.hpp"
#include "skylink/trajectory.hpp"

namespace skylink {

enum class PlanStatus {
  Ok,
  NonConvergence,   // refinement hit its Newton budget; best iterate kept
  BudgetExhausted,  // exhaustive search stopped early; best-so-far kept
};

const char* to_string(PlanStatus status);

struct Plan {
  AssociationSequence sequence;
  HandoverPoints handovers;
  Trajectory trajectory;
  double length = 0.0;           // meters
  double completion_time = 0.0;  // seconds
  double snr_target = 0.0;       // linear
  double radius = 0.0;           // coverage radius used, meters
  std::string method_tag;
  PlanStatus status = PlanStatus::Ok;
  std::vector<std::string> warnings;
};

// Fills trajectory, length and completion time from the handovers.
Plan make_plan(const Scenario& scenario, AssociationSequence sequence, HandoverPoints handovers,
               double snr_target, double radius, std::string method_tag);

// Plan export: sequence, handover coordinates, per-segment times, total time,
// method tag and the worst SNR seen when sampling the trajectory every
// `sample_spacing` meters.
nlohmann::json plan_to_json(const Scenario& scenario, const Plan& plan,
                            double sample_spacing = 1.0);

}  // namespace skylink
