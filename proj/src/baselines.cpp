#include "skylink/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"
#include "skylink/parallel.hpp"
#include "skylink/refine.hpp"

namespace skylink {

EnvelopeBreakpoints straight_flight_envelope(const Scenario& scenario) {
  const Point e = scenario.start - scenario.goal;
  const double a = norm_sq(e);
  const std::size_t m_count = scenario.num_gbs();
  std::vector<double> slope(m_count), offset(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const Point w = scenario.goal - scenario.gbs[m];
    slope[m] = 2.0 * dot(e, w);
    offset[m] = norm_sq(w);
  }

  // Active line at alpha = 0: lowest value, then lowest slope, then index.
  std::size_t active = 0;
  for (std::size_t m = 1; m < m_count; ++m) {
    if (offset[m] < offset[active] ||
        (offset[m] == offset[active] && slope[m] < slope[active])) {
      active = m;
    }
  }

  EnvelopeBreakpoints env;
  double alpha = 0.0;
  for (;;) {
    // Earliest later crossing by a line with a strictly smaller slope.
    std::optional<std::size_t> next;
    double next_alpha = 1.0;
    for (std::size_t m = 0; m < m_count; ++m) {
      if (!(slope[m] < slope[active])) continue;
      double cross = (offset[m] - offset[active]) / (slope[active] - slope[m]);
      cross = std::max(cross, alpha);
      if (cross < next_alpha ||
          (next && cross == next_alpha && slope[m] < slope[*next])) {
        next_alpha = cross;
        next = m;
      }
    }
    EnvelopeInterval interval{alpha, next ? next_alpha : 1.0, active, a, slope[active],
                              offset[active]};
    env.intervals.push_back(interval);
    if (!next) break;
    alpha = next_alpha;
    active = *next;
  }
  // Zero-width intervals carry no information.
  std::erase_if(env.intervals, [&](const EnvelopeInterval& iv) {
    return iv.alpha_end <= iv.alpha_begin && env.intervals.size() > 1;
  });
  env.intervals.front().alpha_begin = 0.0;
  env.intervals.back().alpha_end = 1.0;
  return env;
}

double straight_flight_worst_distance(const Scenario& scenario) {
  double worst = 0.0;
  for (const EnvelopeInterval& iv : straight_flight_envelope(scenario).intervals) {
    // Convex on each interval, so the maximum is at an endpoint.
    worst = std::max({worst, iv.value(iv.alpha_begin), iv.value(iv.alpha_end)});
  }
  return std::sqrt(std::max(worst, 0.0));
}

double straight_flight_max_snr(const Scenario& scenario) {
  return snr_for_radius(scenario, straight_flight_worst_distance(scenario));
}

Plan plan_straight_flight(const Scenario& scenario, double snr_target) {
  const ConnectivityRequirement req = coverage_radius(scenario, snr_target);
  if (straight_flight_worst_distance(scenario) > req.radius + tol::kDistance) {
    throw PlanningError(ErrorCode::Infeasible, "straight flight leaves coverage at this SNR target");
  }
  const EnvelopeBreakpoints env = straight_flight_envelope(scenario);
  // alpha = 1 is the start, so walk the intervals backwards.
  AssociationSequence seq;
  HandoverPoints handovers;
  handovers.points.push_back(scenario.start);
  for (auto it = env.intervals.rbegin(); it != env.intervals.rend(); ++it) {
    if (!seq.empty()) {
      const double alpha = it->alpha_end;
      handovers.points.push_back(alpha * scenario.start + (1.0 - alpha) * scenario.goal);
    }
    seq.indices.push_back(it->gbs);
  }
  handovers.points.push_back(scenario.goal);
  return make_plan(scenario, std::move(seq), std::move(handovers), snr_target, req.radius, "sf");
}

namespace {

// Depth-first enumeration of simple start -> goal paths in lexicographic
// order of GBS indices. visit returns false to stop.
void enumerate_simple_paths(const FeasibilityGraph& graph,
                            const std::function<bool(const AssociationSequence&)>& visit) {
  const std::size_t n = graph.vertex_count();
  std::vector<char> on_path(n, 0);
  AssociationSequence current;
  bool stop = false;
  std::function<void(std::size_t)> extend = [&](std::size_t u) {
    for (std::size_t v : graph.neighbors(u)) {
      if (stop) return;
      if (v == graph.end_index()) {
        if (u != graph.start_index() && !visit(current)) stop = true;
        continue;
      }
      if (v == graph.start_index() || on_path[v]) continue;
      on_path[v] = 1;
      current.indices.push_back(v - 1);
      extend(v);
      current.indices.pop_back();
      on_path[v] = 0;
    }
  };
  on_path[graph.start_index()] = 1;
  extend(graph.start_index());
}

}  // namespace

std::size_t count_simple_paths(const Scenario& scenario, double snr_target, std::size_t limit) {
  const ConnectivityRequirement req = coverage_radius(scenario, snr_target);
  const FeasibilityGraph graph = build_feasibility_graph(scenario, req);
  std::size_t count = 0;
  enumerate_simple_paths(graph, [&](const AssociationSequence&) { return ++count < limit; });
  return count;
}

Plan exhaustive_plan(const Scenario& scenario, double snr_target,
                     const ExhaustiveOptions& options) {
  if (options.path_budget == 0) {
    throw PlanningError(ErrorCode::InvalidArgument, "path budget must be positive");
  }
  const ConnectivityRequirement req = coverage_radius(scenario, snr_target);
  const FeasibilityGraph graph = build_feasibility_graph(scenario, req);
  if (!check_feasibility(graph)) {
    throw PlanningError(ErrorCode::Infeasible, "start and goal are not connected at this SNR target");
  }
  RefineOptions refine_options;
  refine_options.tolerance = options.tolerance;

  struct Candidate {
    AssociationSequence sequence;
    RefineResult refined;
  };
  std::optional<Candidate> best;
  bool any_unconverged = false;
  std::vector<AssociationSequence> batch;
  std::vector<RefineResult> results;
  constexpr std::size_t kBatch = 4096;

  auto flush = [&] {
    results.assign(batch.size(), {});
    parallel_for(batch.size(), options.workers, [&](std::size_t i) {
      results[i] = refine_handovers(scenario, batch[i], req.radius, refine_options);
    });
    for (std::size_t i = 0; i < batch.size(); ++i) {
      any_unconverged = any_unconverged || !results[i].converged;
      if (!best || results[i].length < best->refined.length ||
          (results[i].length == best->refined.length && batch[i] < best->sequence)) {
        best = Candidate{batch[i], std::move(results[i])};
      }
    }
    batch.clear();
  };

  std::size_t seen = 0;
  bool exhausted = false;
  enumerate_simple_paths(graph, [&](const AssociationSequence& seq) {
    if (seen == options.path_budget) {
      exhausted = true;
      return false;
    }
    ++seen;
    batch.push_back(seq);
    if (batch.size() == kBatch) flush();
    return true;
  });
  flush();

  Plan plan = make_plan(scenario, std::move(best->sequence), std::move(best->refined.handovers),
                        snr_target, req.radius, "exhaustive");
  if (exhausted) {
    plan.status = PlanStatus::BudgetExhausted;
    plan.warnings.push_back("path budget of " + std::to_string(options.path_budget) +
                            " exhausted; result is the best of the paths examined");
  } else if (any_unconverged) {
    plan.status = PlanStatus::NonConvergence;
    plan.warnings.push_back("at least one handover refinement hit its Newton budget");
  }
  return plan;
}

}  // namespace skylink
