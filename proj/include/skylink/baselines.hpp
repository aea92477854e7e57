#pragma once

#include <cstddef>
#include <vector>

#include "skylink/plan.hpp"
#include "skylink/scenario.hpp"
#include "skylink/tolerances.hpp"

namespace skylink {

// Squared distance from p(alpha) = alpha * start + (1 - alpha) * goal to the
// active GBS on one interval: a alpha^2 + b alpha + c.
struct EnvelopeInterval {
  double alpha_begin = 0.0;
  double alpha_end = 1.0;
  std::size_t gbs = 0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  double value(double alpha) const { return (a * alpha + b) * alpha + c; }
};

// Lower envelope of the squared GBS distances along the straight segment.
// Intervals are ordered by alpha and partition [0, 1].
struct EnvelopeBreakpoints {
  std::vector<EnvelopeInterval> intervals;
};

// All quadratics share the leading coefficient |start - goal|^2, so the
// envelope is that term plus a lower envelope of lines and every breakpoint
// is exact.
EnvelopeBreakpoints straight_flight_envelope(const Scenario& scenario);

// Largest closest-GBS distance met on the straight segment.
double straight_flight_worst_distance(const Scenario& scenario);

// Largest SNR target the straight start -> goal flight sustains.
double straight_flight_max_snr(const Scenario& scenario);

// Straight flight at full speed, associated with the closest GBS throughout.
// Throws Infeasible when the segment leaves coverage at this target.
Plan plan_straight_flight(const Scenario& scenario, double snr_target);

struct ExhaustiveOptions {
  std::size_t path_budget = 1'000'000;
  double tolerance = tol::kRefineOracle;
  std::size_t workers = 1;
};

// Refines every simple start -> goal path of the feasibility graph and keeps
// the shortest (ties: lexicographically smaller sequence). Status
// BudgetExhausted when more than `path_budget` paths exist; the best of the
// first `path_budget` is returned then. Throws Infeasible when no path exists.
Plan exhaustive_plan(const Scenario& scenario, double snr_target,
                     const ExhaustiveOptions& options = {});

// Number of simple start -> goal paths, counting stops at `limit`.
std::size_t count_simple_paths(const Scenario& scenario, double snr_target, std::size_t limit);

}  // namespace skylink
