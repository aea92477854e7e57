#include "skylink/method1.hpp"

#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"

namespace skylink {

Plan plan_method1(const Scenario& scenario, double snr_target, const RefineOptions& options) {
  const ConnectivityRequirement req = coverage_radius(scenario, snr_target);
  const FeasibilityGraph graph = build_feasibility_graph(scenario, req);
  if (!check_feasibility(graph)) {
    throw PlanningError(ErrorCode::Infeasible, "start and goal are not connected at this SNR target");
  }
  AssociationPath assoc = shortest_association(graph);
  RefineResult refined = refine_handovers(scenario, assoc.sequence, req.radius, options);
  Plan plan = make_plan(scenario, std::move(assoc.sequence), std::move(refined.handovers),
                        snr_target, req.radius, "m1");
  if (!refined.converged) {
    plan.status = PlanStatus::NonConvergence;
    plan.warnings.push_back("handover refinement hit its Newton budget");
  }
  return plan;
}

double method1_gap_bound(std::size_t num_gbs, double radius) {
  return 2.0 * static_cast<double>(num_gbs) * radius;
}

}  // namespace skylink
