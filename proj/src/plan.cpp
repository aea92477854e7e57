#include "skylink/plan.hpp"

#include "skylink/trajectory.hpp"

namespace skylink {

const char* to_string(PlanStatus status) {
  switch (status) {
    case PlanStatus::Ok: return "ok";
    case PlanStatus::NonConvergence: return "non_convergence";
    case PlanStatus::BudgetExhausted: return "budget_exhausted";
  }
  return "unknown";
}

Plan make_plan(const Scenario& scenario, AssociationSequence sequence, HandoverPoints handovers,
               double snr_target, double radius, std::string method_tag) {
  Plan plan;
  plan.sequence = std::move(sequence);
  plan.handovers = std::move(handovers);
  plan.trajectory = assemble_trajectory(plan.handovers, scenario.max_speed);
  plan.length = path_length(plan.handovers);
  plan.completion_time = plan.length / scenario.max_speed;
  plan.snr_target = snr_target;
  plan.radius = radius;
  plan.method_tag = std::move(method_tag);
  return plan;
}

nlohmann::json plan_to_json(const Scenario& scenario, const Plan& plan, double sample_spacing) {
  using nlohmann::json;
  json handovers = json::array();
  for (const Point& p : plan.handovers.points) handovers.push_back(json::array({p.x, p.y}));
  const ValidationReport report =
      validate_trajectory(scenario, plan.trajectory, plan.snr_target, sample_spacing);
  return json{{"method", plan.method_tag},
              {"status", to_string(plan.status)},
              {"sequence", plan.sequence.indices},
              {"handovers", handovers},
              {"segment_times_s", plan.trajectory.segment_durations},
              {"total_time_s", plan.completion_time},
              {"length_m", plan.length},
              {"snr_target_db", to_db(plan.snr_target)},
              {"coverage_radius_m", plan.radius},
              {"worst_sampled_snr_db", to_db(report.worst_snr)},
              {"valid", report.passed},
              {"warnings", plan.warnings}};
}

}  // namespace skylink
