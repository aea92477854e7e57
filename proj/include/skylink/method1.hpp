#pragma once

#include "skylink/plan.hpp"
#include "skylink/refine.hpp"
#include "skylink/scenario.hpp"

namespace skylink {

// Shortest GBS-hop association on the feasibility graph followed by convex
// refinement of the handover locations.
//
// Throws UnachievableSnr (target above the on-top SNR) or Infeasible (start and
// goal disconnected).
Plan plan_method1(const Scenario& scenario, double snr_target, const RefineOptions& options = {});

// Worst-case excess of Method I over the optimum, 2 * M * radius.
double method1_gap_bound(std::size_t num_gbs, double radius);

}  // namespace skylink
