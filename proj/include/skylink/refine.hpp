#pragma once

#include <vector>

#include "skylink/association.hpp"
#include "skylink/scenario.hpp"
#include "skylink/tolerances.hpp"
#include "skylink/trajectory.hpp"

namespace skylink {

struct RefineOptions {
  // Certified optimality gap on the flight length, meters.
  double tolerance = tol::kRefineDefault;
  // Total Newton-step budget across all centring rounds.
  int max_newton_steps = 5000;
};

struct RefineResult {
  HandoverPoints handovers;
  double length = 0.0;
  bool converged = true;  // false: Newton budget exhausted, best iterate returned
  int centering_rounds = 0;
  int newton_steps = 0;
  double gap_bound = 0.0;  // meters; length - optimum <= gap_bound when converged
  // Sum of segment epigraph variables at each centred iterate, in meters.
  std::vector<double> objective_trace;
};

// Shortest polyline start -> u^1 -> ... -> goal with every handover u^i in the
// lens of GBSs I_i and I_{i+1} at coverage radius `radius`.
//
// Solved as a second-order cone program
//   min sum s_i  s.t.  ||u^i - u^{i-1}|| <= s_i,  ||u^i - g|| <= radius
// with a log-barrier path-following method (damped Newton centring, barrier
// weight multiplied by 10 per round). Coordinates are scaled by the radius
// before solving. Lenses thinner than tol::kTangentLensRelative are pinned to
// their tangency point.
//
// Throws PlanningError(Infeasible) when `seq` violates the start, goal or
// overlap conditions at `radius`.
RefineResult refine_handovers(const Scenario& scenario, const AssociationSequence& seq,
                              double radius, const RefineOptions& options = {});

// Start/goal coverage and pairwise overlap of consecutive GBSs, with `slack`
// meters of tolerance.
bool sequence_feasible(const Scenario& scenario, const AssociationSequence& seq, double radius,
                       double slack = tol::kDistance);

}  // namespace skylink
