#include "skylink/refine.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "skylink/errors.hpp"

namespace skylink {

bool sequence_feasible(const Scenario& scenario, const AssociationSequence& seq, double radius,
                       double slack) {
  if (seq.empty()) return false;
  for (std::size_t idx : seq.indices) {
    if (idx >= scenario.num_gbs()) return false;
  }
  if (distance(scenario.start, scenario.gbs[seq[0]]) > radius + slack) return false;
  if (distance(scenario.goal, scenario.gbs[seq[seq.size() - 1]]) > radius + slack) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    if (distance(scenario.gbs[seq[i]], scenario.gbs[seq[i + 1]]) > 2.0 * radius + slack) {
      return false;
    }
  }
  return true;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Barrier problem in radius-normalised coordinates.
//   variables: free handover points (2 each), then s_1..s_N
//   f_t(x) = t * sum s_i - sum log(s_i^2 - |d_i|^2) - sum log(1 - |u - c|^2)
class BarrierProblem {
 public:
  BarrierProblem(std::vector<Point> anchors, std::vector<int> slot,
                 std::vector<std::pair<Point, Point>> lens_centers, int free_points)
      : anchors_(std::move(anchors)),
        slot_(std::move(slot)),
        lens_(std::move(lens_centers)),
        free_points_(free_points),
        segments_(static_cast<int>(anchors_.size()) - 1) {}

  int dimension() const { return 2 * free_points_ + segments_; }
  int segments() const { return segments_; }
  // Barrier parameter: 2 per cone, 1 per disk constraint.
  double theta() const { return 2.0 * segments_ + 2.0 * free_points_; }

  Point point(const Eigen::VectorXd& x, int i) const {
    const int k = slot_[i];
    if (k < 0) return anchors_[i];
    return {x[2 * k], x[2 * k + 1]};
  }
  int s_index(int segment) const { return 2 * free_points_ + segment; }

  Eigen::VectorXd initial_point() const {
    Eigen::VectorXd x(dimension());
    for (int i = 0; i <= segments_; ++i) {
      if (slot_[i] >= 0) {
        x[2 * slot_[i]] = anchors_[i].x;
        x[2 * slot_[i] + 1] = anchors_[i].y;
      }
    }
    for (int j = 0; j < segments_; ++j) {
      x[s_index(j)] = distance(point(x, j), point(x, j + 1)) + 1.0;
    }
    return x;
  }

  double objective(const Eigen::VectorXd& x) const {
    double total = 0.0;
    for (int j = 0; j < segments_; ++j) total += x[s_index(j)];
    return total;
  }

  double length(const Eigen::VectorXd& x) const {
    double total = 0.0;
    for (int j = 0; j < segments_; ++j) total += distance(point(x, j), point(x, j + 1));
    return total;
  }

  // Barrier value; +inf outside the domain.
  double value(const Eigen::VectorXd& x, double t) const {
    double f = t * objective(x);
    for (int j = 0; j < segments_; ++j) {
      const double s = x[s_index(j)];
      const double w = s * s - distance_sq(point(x, j + 1), point(x, j));
      if (!(s > 0.0) || !(w > 0.0)) return kInf;
      f -= std::log(w);
    }
    for (int i = 1; i < segments_; ++i) {
      if (slot_[i] < 0) continue;
      const Point u = point(x, i);
      for (Point c : {lens_[i].first, lens_[i].second}) {
        const double w = 1.0 - distance_sq(u, c);
        if (!(w > 0.0)) return kInf;
        f -= std::log(w);
      }
    }
    return f;
  }

  void derivatives(const Eigen::VectorXd& x, double t, Eigen::VectorXd& g,
                   Eigen::MatrixXd& h) const {
    g.setZero(dimension());
    h.setZero(dimension(), dimension());
    for (int j = 0; j < segments_; ++j) {
      const int si = s_index(j);
      g[si] += t;
      const double s = x[si];
      const Point d = point(x, j + 1) - point(x, j);
      const double w = s * s - norm_sq(d);
      const double w2 = w * w;
      // Gradient and Hessian of -log(s^2 - |d|^2) in (d, s).
      const double gd[2] = {2.0 * d.x / w, 2.0 * d.y / w};
      const double gs = -2.0 * s / w;
      const double hdd[2][2] = {{2.0 / w + 4.0 * d.x * d.x / w2, 4.0 * d.x * d.y / w2},
                                {4.0 * d.x * d.y / w2, 2.0 / w + 4.0 * d.y * d.y / w2}};
      const double hds[2] = {-4.0 * s * d.x / w2, -4.0 * s * d.y / w2};
      const double hss = -2.0 / w + 4.0 * s * s / w2;

      g[si] += gs;
      h(si, si) += hss;
      // d = P_{j+1} - P_j: sign +1 for the head, -1 for the tail.
      const int ends[2] = {slot_[j + 1], slot_[j]};
      const double sign[2] = {1.0, -1.0};
      for (int a = 0; a < 2; ++a) {
        if (ends[a] < 0) continue;
        const int ia = 2 * ends[a];
        for (int r = 0; r < 2; ++r) {
          g[ia + r] += sign[a] * gd[r];
          h(ia + r, si) += sign[a] * hds[r];
          h(si, ia + r) += sign[a] * hds[r];
        }
        for (int b = 0; b < 2; ++b) {
          if (ends[b] < 0) continue;
          const int ib = 2 * ends[b];
          for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) h(ia + r, ib + c) += sign[a] * sign[b] * hdd[r][c];
          }
        }
      }
    }
    for (int i = 1; i < segments_; ++i) {
      const int k = slot_[i];
      if (k < 0) continue;
      const Point u = point(x, i);
      for (Point c : {lens_[i].first, lens_[i].second}) {
        const Point r = u - c;
        const double w = 1.0 - norm_sq(r);
        const double w2 = w * w;
        g[2 * k] += 2.0 * r.x / w;
        g[2 * k + 1] += 2.0 * r.y / w;
        h(2 * k, 2 * k) += 2.0 / w + 4.0 * r.x * r.x / w2;
        h(2 * k + 1, 2 * k + 1) += 2.0 / w + 4.0 * r.y * r.y / w2;
        h(2 * k, 2 * k + 1) += 4.0 * r.x * r.y / w2;
        h(2 * k + 1, 2 * k) += 4.0 * r.x * r.y / w2;
      }
    }
  }

 private:
  std::vector<Point> anchors_;  // fixed points; initial guess for free ones
  std::vector<int> slot_;       // free-point slot per handover index, -1 if fixed
  std::vector<std::pair<Point, Point>> lens_;
  int free_points_;
  int segments_;
};

}  // namespace

RefineResult refine_handovers(const Scenario& scenario, const AssociationSequence& seq,
                              double radius, const RefineOptions& options) {
  if (!(options.tolerance > 0.0)) {
    throw PlanningError(ErrorCode::InvalidArgument, "refinement tolerance must be positive");
  }
  if (!sequence_feasible(scenario, seq, radius)) {
    throw PlanningError(ErrorCode::Infeasible,
                        "association sequence violates coverage or overlap at this radius");
  }
  const std::size_t n_seg = seq.size();
  RefineResult result;

  if (n_seg == 1) {
    result.handovers.points = {scenario.start, scenario.goal};
    result.length = path_length(result.handovers);
    result.objective_trace.push_back(result.length);
    return result;
  }

  const double scale = radius > 0.0 ? radius : 1.0;
  const Point origin = scenario.start;
  auto to_local = [&](Point p) { return (1.0 / scale) * (p - origin); };
  auto to_world = [&](Point p) { return origin + scale * p; };

  std::vector<Point> anchors(n_seg + 1);
  std::vector<int> slot(n_seg + 1, -1);
  std::vector<std::pair<Point, Point>> lens(n_seg + 1);
  anchors[0] = to_local(scenario.start);
  anchors[n_seg] = to_local(scenario.goal);
  int free_points = 0;
  for (std::size_t i = 1; i < n_seg; ++i) {
    const Point a = to_local(scenario.gbs[seq[i - 1]]);
    const Point b = to_local(scenario.gbs[seq[i]]);
    lens[i] = {a, b};
    anchors[i] = 0.5 * (a + b);
    const bool tangent = radius <= 0.0 || 2.0 - distance(a, b) <= 2.0 * tol::kTangentLensRelative;
    if (!tangent) slot[i] = free_points++;
  }

  BarrierProblem problem(anchors, slot, lens, free_points);
  Eigen::VectorXd x = problem.initial_point();

  auto extract = [&](const Eigen::VectorXd& state) {
    HandoverPoints hp;
    hp.points.resize(n_seg + 1);
    for (std::size_t i = 0; i <= n_seg; ++i) hp.points[i] = to_world(problem.point(state, static_cast<int>(i)));
    hp.points.front() = scenario.start;
    hp.points.back() = scenario.goal;
    return hp;
  };

  if (free_points > 0) {
    const double target_gap = options.tolerance / scale;
    const double theta = problem.theta();
    double t = 1.0;
    const int n = problem.dimension();
    Eigen::VectorXd g(n), dx(n), trial(n);
    Eigen::MatrixXd h(n, n);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(n);
    bool budget_left = true;
    while (budget_left) {
      // Centring by damped Newton.
      for (;;) {
        if (result.newton_steps >= options.max_newton_steps) {
          budget_left = false;
          break;
        }
        problem.derivatives(x, t, g, h);
        ldlt.compute(h);
        dx = ldlt.solve(-g);
        const double decrement_sq = -g.dot(dx);
        ++result.newton_steps;
        if (!(decrement_sq >= 0.0) || !dx.allFinite()) break;
        if (0.5 * decrement_sq <= 1e-10) break;
        const double f0 = problem.value(x, t);
        double step = 1.0;
        double f1 = kInf;
        for (int halvings = 0; halvings < 80; ++halvings) {
          trial = x + step * dx;
          f1 = problem.value(trial, t);
          if (f1 <= f0 - 0.25 * step * decrement_sq) break;
          step *= 0.5;
        }
        if (!(f1 < f0)) break;  // no progress possible at working precision
        x = trial;
      }
      if (!budget_left) break;
      ++result.centering_rounds;
      result.objective_trace.push_back(scale * problem.objective(x));
      if (theta / t <= target_gap) break;
      t *= 10.0;
    }
    result.converged = budget_left;
    result.gap_bound = scale * theta / t;
  }

  result.handovers = extract(x);
  result.length = path_length(result.handovers);

  // Never return something longer than the centre-of-arc candidate.
  try {
    HandoverPoints candidate = candidate_handovers(scenario, seq, radius);
    const double candidate_length = path_length(candidate);
    if (candidate_length < result.length) {
      result.handovers = std::move(candidate);
      result.length = candidate_length;
    }
  } catch (const PlanningError& e) {
    if (e.code() != ErrorCode::DegenerateSequence) throw;
  }
  return result;
}

}  // namespace skylink
