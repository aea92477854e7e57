#include "skylink/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "skylink/errors.hpp"
#include "skylink/scenario_io.hpp"
#include "skylink/tolerances.hpp"

namespace skylink {

Point Trajectory::position_at(double t) const {
  if (waypoints.empty()) return {};
  if (t <= 0.0) return waypoints.front();
  double elapsed = 0.0;
  for (std::size_t i = 0; i < segment_durations.size(); ++i) {
    const double duration = segment_durations[i];
    if (t <= elapsed + duration && duration > 0.0) {
      const Point a = waypoints[i];
      const Point b = waypoints[i + 1];
      const double len = distance(a, b);
      // Fly at max_speed along the segment direction.
      return a + ((t - elapsed) * max_speed / len) * (b - a);
    }
    elapsed += duration;
  }
  return waypoints.back();
}

std::size_t Trajectory::segment_at(double t) const {
  double elapsed = 0.0;
  for (std::size_t i = 0; i < segment_durations.size(); ++i) {
    elapsed += segment_durations[i];
    if (t < elapsed) return i;
  }
  return segment_durations.empty() ? 0 : segment_durations.size() - 1;
}

HandoverPoints candidate_handovers(const Scenario& scenario, const AssociationSequence& seq,
                                   double radius) {
  if (seq.empty()) {
    throw PlanningError(ErrorCode::InvalidArgument, "association sequence is empty");
  }
  HandoverPoints out;
  out.points.reserve(seq.size() + 1);
  out.points.push_back(scenario.start);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    const Point from = scenario.gbs[seq[i]];
    const Point to = scenario.gbs[seq[i + 1]];
    const double gap = distance(from, to);
    if (gap == 0.0) {
      throw PlanningError(ErrorCode::DegenerateSequence,
                          "consecutive GBSs " + std::to_string(seq[i]) + " and " +
                              std::to_string(seq[i + 1]) + " coincide");
    }
    out.points.push_back(from + (radius / gap) * (to - from));
  }
  out.points.push_back(scenario.goal);
  return out;
}

double association_upper_bound(const Scenario& scenario, const AssociationSequence& seq) {
  if (seq.empty()) {
    throw PlanningError(ErrorCode::InvalidArgument, "association sequence is empty");
  }
  double total = distance(scenario.start, scenario.gbs[seq[0]]);
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    total += distance(scenario.gbs[seq[i]], scenario.gbs[seq[i + 1]]);
  }
  return total + distance(scenario.goal, scenario.gbs[seq[seq.size() - 1]]);
}

double path_length(const HandoverPoints& handovers) {
  if (handovers.size() < 2) {
    throw PlanningError(ErrorCode::InvalidArgument, "a path needs at least two points");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < handovers.size(); ++i) {
    total += distance(handovers[i - 1], handovers[i]);
  }
  return total;
}

Trajectory assemble_trajectory(const HandoverPoints& handovers, double max_speed) {
  if (!(max_speed > 0.0)) {
    throw PlanningError(ErrorCode::InvalidArgument, "max_speed must be positive");
  }
  Trajectory traj;
  traj.waypoints = handovers.points;
  traj.max_speed = max_speed;
  for (std::size_t i = 1; i < handovers.size(); ++i) {
    const double duration = distance(handovers[i - 1], handovers[i]) / max_speed;
    traj.segment_durations.push_back(duration);
    traj.total_time += duration;
  }
  return traj;
}

bool handovers_feasible(const Scenario& scenario, const AssociationSequence& seq,
                        const HandoverPoints& handovers, double radius, double slack) {
  if (seq.empty() || handovers.size() != seq.size() + 1) return false;
  if (distance(handovers[0], scenario.start) > slack) return false;
  if (distance(handovers[seq.size()], scenario.goal) > slack) return false;
  const double limit = radius + slack;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const Point g = scenario.gbs[seq[i]];
    // Segment i runs u^i -> u^{i+1} and is served by I_{i+1} (1-based).
    if (distance(handovers[i], g) > limit || distance(handovers[i + 1], g) > limit) return false;
  }
  return true;
}

SnapResult snap_to_boundary(const Scenario& scenario, const AssociationSequence& seq,
                            const HandoverPoints& handovers, double radius) {
  if (handovers.size() != seq.size() + 1) {
    throw PlanningError(ErrorCode::InvalidArgument, "handover count does not match sequence");
  }
  SnapResult result;
  result.handovers = handovers;
  const double r2 = radius * radius;
  for (std::size_t i = 1; i + 1 < handovers.size(); ++i) {
    const Point g = scenario.gbs[seq[i - 1]];
    const Point offset = handovers[i] - g;
    const Point step = handovers[i + 1] - handovers[i];
    // |offset + alpha * step|^2 = r^2  ->  a alpha^2 + b alpha + c = 0
    const double a = norm_sq(step);
    const double b = 2.0 * dot(offset, step);
    const double c = norm_sq(offset) - r2;
    const double on_circle = tol::kOnCircleRelative * std::max(r2, 1.0);

    std::optional<double> alpha;
    if (std::abs(c) <= on_circle) {
      alpha = 0.0;
    } else if (a > 0.0) {
      const double disc = b * b - 4.0 * a * c;
      if (disc >= 0.0) {
        const double sq = std::sqrt(disc);
        // Numerically stable pair of roots.
        const double qv = -0.5 * (b + std::copysign(sq, b));
        double roots[2] = {qv / a, qv != 0.0 ? c / qv : qv / a};
        std::sort(std::begin(roots), std::end(roots));
        for (double root : roots) {
          if (root >= 0.0 && root <= 1.0 + 1e-12) {
            alpha = std::min(root, 1.0);
            break;
          }
        }
      }
    }
    if (alpha) {
      result.alphas.push_back(*alpha);
      result.handovers.points[i] = handovers[i] + *alpha * step;
    } else {
      result.alphas.push_back(0.0);
      result.unsnapped.push_back(i);
    }
  }
  return result;
}

LoopRemoval remove_loop(const AssociationSequence& seq, const HandoverPoints& handovers,
                        std::size_t first, std::size_t second) {
  if (!(first < second && second < seq.size()) || seq[first] != seq[second] ||
      handovers.size() != seq.size() + 1) {
    throw PlanningError(ErrorCode::InvalidArgument, "remove_loop needs two positions of one GBS");
  }
  LoopRemoval out;
  // Keep I_1..I_first and I_{second+1}.., and the handovers before entering
  // the first visit and after leaving the second one.
  out.sequence.indices.assign(seq.indices.begin(), seq.indices.begin() + first + 1);
  out.sequence.indices.insert(out.sequence.indices.end(),
                              seq.indices.begin() + second + 1, seq.indices.end());
  out.handovers.points.assign(handovers.points.begin(), handovers.points.begin() + first + 1);
  out.handovers.points.insert(out.handovers.points.end(),
                              handovers.points.begin() + second + 1, handovers.points.end());
  return out;
}

ValidationReport validate_trajectory(const Scenario& scenario, const Trajectory& trajectory,
                                     double snr_target, double sample_spacing) {
  if (!(sample_spacing > 0.0)) {
    throw PlanningError(ErrorCode::InvalidArgument, "sample spacing must be positive");
  }
  ValidationReport report;
  report.worst_snr = std::numeric_limits<double>::infinity();
  const double snr_floor = snr_target * (1.0 - tol::kSnrRelative);
  const auto& wp = trajectory.waypoints;

  auto record = [&](const TrajectorySample& sample) {
    ++report.samples;
    if (sample.snr < report.worst_snr) {
      report.worst_snr = sample.snr;
      report.worst_sample = sample;
    }
    if (sample.snr < snr_floor && !report.first_violation) report.first_violation = sample;
  };

  double elapsed = 0.0;
  report.speed_ok = true;
  if (wp.size() == 1) {
    record({0.0, wp[0], snr_at(scenario, wp[0]), 0});
  }
  for (std::size_t i = 0; i + 1 < wp.size(); ++i) {
    const Point a = wp[i];
    const Point b = wp[i + 1];
    const double len = distance(a, b);
    const double duration = i < trajectory.segment_durations.size()
                                ? trajectory.segment_durations[i]
                                : 0.0;
    if (len > 0.0) {
      const double speed = duration > 0.0 ? len / duration : std::numeric_limits<double>::infinity();
      report.max_speed_observed = std::max(report.max_speed_observed, speed);
      if (speed > scenario.max_speed * (1.0 + tol::kSpeedRelative)) report.speed_ok = false;
    }
    const auto steps = static_cast<std::size_t>(std::max(1.0, std::ceil(len / sample_spacing)));
    for (std::size_t k = (i == 0 ? 0 : 1); k <= steps; ++k) {
      const double frac = static_cast<double>(k) / static_cast<double>(steps);
      const Point p = a + frac * (b - a);
      record({elapsed + frac * duration, p, snr_at(scenario, p), i});
    }
    elapsed += duration;
  }
  if (wp.empty()) {
    report.start_error = report.goal_error = std::numeric_limits<double>::infinity();
  } else {
    report.start_error = distance(wp.front(), scenario.start);
    report.goal_error = distance(wp.back(), scenario.goal);
  }
  report.snr_ok = !report.first_violation && report.samples > 0;
  report.endpoints_ok =
      report.start_error <= tol::kEndpoint && report.goal_error <= tol::kEndpoint;
  report.passed = report.snr_ok && report.speed_ok && report.endpoints_ok;
  return report;
}

void write_trajectory_csv(std::ostream& out, const Scenario& scenario,
                          const Trajectory& trajectory, double time_step) {
  if (!(time_step > 0.0)) {
    throw PlanningError(ErrorCode::InvalidArgument, "time step must be positive");
  }
  out << "t_s,x_m,y_m,snr_db,associated_gbs\n";
  auto row = [&](double t) {
    const Point p = trajectory.position_at(t);
    out << format_double(t) << ',' << format_double(p.x) << ',' << format_double(p.y) << ','
        << format_double(to_db(snr_at(scenario, p))) << ',' << closest_gbs(scenario, p) << '\n';
  };
  const double total = trajectory.total_time;
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * time_step;
    if (t >= total) break;
    row(t);
  }
  row(total);
}

}  // namespace skylink
