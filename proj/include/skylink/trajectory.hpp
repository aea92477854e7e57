#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "skylink/association.hpp"
#include "skylink/scenario.hpp"

namespace skylink {

// u^0 .. u^N: the start, the N-1 handover locations, the goal.
struct HandoverPoints {
  std::vector<Point> points;

  std::size_t size() const { return points.size(); }
  const Point& operator[](std::size_t i) const { return points[i]; }
};

// Piecewise-linear flight at constant maximum speed through the waypoints.
struct Trajectory {
  std::vector<Point> waypoints;
  std::vector<double> segment_durations;  // seconds
  double total_time = 0.0;                // seconds
  double max_speed = 0.0;                 // m/s

  Point position_at(double t) const;
  // Segment index active at time t (the later one at a boundary).
  std::size_t segment_at(double t) const;
};

// Candidate handovers: each interior point sits on the boundary of the
// outgoing GBS, on the segment towards the next GBS. Throws DegenerateSequence
// when two consecutive GBSs coincide.
HandoverPoints candidate_handovers(const Scenario& scenario, const AssociationSequence& seq,
                                   double radius);

// Length of the polyline start -> g_{I_1} -> ... -> g_{I_N} -> goal. Upper
// bound on the optimal flight length for the sequence.
double association_upper_bound(const Scenario& scenario, const AssociationSequence& seq);

double path_length(const HandoverPoints& handovers);

Trajectory assemble_trajectory(const HandoverPoints& handovers, double max_speed);

// True when every handover lies in its feasible lens (within `slack` meters)
// and the endpoints are the scenario start and goal.
bool handovers_feasible(const Scenario& scenario, const AssociationSequence& seq,
                        const HandoverPoints& handovers, double radius,
                        double slack = 1e-6);

struct SnapResult {
  HandoverPoints handovers;
  std::vector<double> alphas;             // per interior point, 0 when unsnapped
  std::vector<std::size_t> unsnapped;     // interior indices with no crossing in [0, 1]
};

// Slides every interior handover u^i along u^i -> u^{i+1} onto the boundary
// circle of g_{I_i}. Points whose forward segment never reaches the circle are
// kept in place and listed in `unsnapped`.
SnapResult snap_to_boundary(const Scenario& scenario, const AssociationSequence& seq,
                            const HandoverPoints& handovers, double radius);

struct LoopRemoval {
  AssociationSequence sequence;
  HandoverPoints handovers;
};

// Drops the loop between two occurrences of the same GBS at sequence
// positions first < second (0-based), keeping the handovers outside it.
LoopRemoval remove_loop(const AssociationSequence& seq, const HandoverPoints& handovers,
                        std::size_t first, std::size_t second);

struct TrajectorySample {
  double time = 0.0;
  Point position;
  double snr = 0.0;
  std::size_t segment = 0;
};

struct ValidationReport {
  bool passed = false;
  double worst_snr = 0.0;
  TrajectorySample worst_sample;
  std::optional<TrajectorySample> first_violation;
  double max_speed_observed = 0.0;
  double start_error = 0.0;
  double goal_error = 0.0;
  std::size_t samples = 0;
  bool snr_ok = false;
  bool speed_ok = false;
  bool endpoints_ok = false;
};

// Samples every segment at spacing <= sample_spacing meters and checks the SNR
// target, the speed limit and the endpoints.
ValidationReport validate_trajectory(const Scenario& scenario, const Trajectory& trajectory,
                                     double snr_target, double sample_spacing);

// CSV with header t_s,x_m,y_m,snr_db,associated_gbs sampled every time_step
// seconds; the final instant is always included.
void write_trajectory_csv(std::ostream& out, const Scenario& scenario,
                          const Trajectory& trajectory, double time_step);

}  // namespace skylink
