#include "skylink/method2.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>

#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"

namespace skylink {

std::vector<Point> quantize_boundary(Point gm, Point gn, double radius, std::size_t quant_levels) {
  if (quant_levels < 2) {
    throw PlanningError(ErrorCode::InvalidQuantLevels, "need at least two quantization levels");
  }
  const double gap = distance(gm, gn);
  if (gap > 2.0 * radius) {
    throw PlanningError(ErrorCode::NoOverlap, "coverage disks do not intersect");
  }
  const Point dir = gn - gm;
  const double phi = std::atan2(dir.y, dir.x);
  const double ratio = radius > 0.0 ? std::clamp(gap / (2.0 * radius), 0.0, 1.0) : 1.0;
  const double theta = 2.0 * std::acos(ratio);
  std::vector<Point> points;
  points.reserve(quant_levels);
  const double denom = static_cast<double>(quant_levels - 1);
  for (std::size_t q = 0; q < quant_levels; ++q) {
    const double angle = phi + (static_cast<double>(q) / denom - 0.5) * theta;
    points.push_back(gm + radius * Point{std::cos(angle), std::sin(angle)});
  }
  return points;
}

QuantizedGraph build_quantized_graph(const Scenario& scenario, const ConnectivityRequirement& req,
                                     std::size_t quant_levels) {
  if (quant_levels < 2) {
    throw PlanningError(ErrorCode::InvalidQuantLevels, "need at least two quantization levels");
  }
  const std::size_t m_count = scenario.num_gbs();
  const double r = req.radius;
  QuantizedGraph graph;
  graph.quant_levels_ = quant_levels;
  graph.radius_ = r;
  graph.num_gbs_ = m_count;
  graph.start_ = scenario.start;
  graph.goal_ = scenario.goal;
  graph.pair_index_.assign(m_count * m_count, -1);

  std::vector<char> covers_start(m_count), covers_goal(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    covers_start[m] = distance(scenario.start, scenario.gbs[m]) <= r;
    covers_goal[m] = distance(scenario.goal, scenario.gbs[m]) <= r;
    if (covers_start[m] && covers_goal[m] && !graph.direct_gbs_) graph.direct_gbs_ = m;
  }

  for (std::size_t m = 0; m < m_count; ++m) {
    for (std::size_t n = 0; n < m_count; ++n) {
      if (m == n) continue;
      const double gap = distance(scenario.gbs[m], scenario.gbs[n]);
      if (gap > 2.0 * r) continue;
      if (gap == 0.0) {
        graph.warnings_.push_back("GBS " + std::to_string(m) + " and " + std::to_string(n) +
                                  " coincide; their boundary arc spans a half circle");
      }
      graph.pair_index_[m * m_count + n] = static_cast<long>(graph.pairs_.size());
      QuantizedGraph::Pair pair;
      pair.from = m;
      pair.to = n;
      pair.start_covered = covers_start[m];
      pair.goal_covered = covers_goal[n];
      graph.pairs_.push_back(pair);
      const auto pts = quantize_boundary(scenario.gbs[m], scenario.gbs[n], r, quant_levels);
      graph.points_.insert(graph.points_.end(), pts.begin(), pts.end());
    }
  }
  for (auto& pair : graph.pairs_) {
    for (std::size_t l = 0; l < m_count; ++l) {
      if (l == pair.from || l == pair.to) continue;
      const long next = graph.pair_index_[pair.to * m_count + l];
      if (next >= 0) pair.successors.push_back(static_cast<std::size_t>(next));
    }
  }
  return graph;
}

std::size_t QuantizedGraph::edge_count() const {
  const std::size_t q = quant_levels_;
  std::size_t count = direct_gbs_ ? 1 : 0;
  for (const Pair& pair : pairs_) {
    if (pair.start_covered) count += q;
    if (pair.goal_covered) count += q;
    count += pair.successors.size() * q * q;
  }
  return count;
}

QuantizedVertex QuantizedGraph::label(std::size_t v) const {
  if (v == kStart) return {QuantizedVertex::Kind::Start, 0, 0, 0};
  if (v == kEnd) return {QuantizedVertex::Kind::End, 0, 0, 0};
  const Pair& pair = pairs_[pair_of(v)];
  return {QuantizedVertex::Kind::Boundary, pair.from, pair.to, (v - 2) % quant_levels_ + 1};
}

Point QuantizedGraph::position(std::size_t v) const {
  if (v == kStart) return start_;
  if (v == kEnd) return goal_;
  return points_[v - 2];
}

std::optional<std::size_t> QuantizedGraph::vertex_of(std::size_t from, std::size_t to,
                                                     std::size_t level) const {
  if (from >= num_gbs_ || to >= num_gbs_ || level < 1 || level > quant_levels_) return std::nullopt;
  const long p = pair_index_[from * num_gbs_ + to];
  if (p < 0) return std::nullopt;
  return 2 + static_cast<std::size_t>(p) * quant_levels_ + (level - 1);
}

std::vector<QuantizedEdge> QuantizedGraph::out_edges(std::size_t v) const {
  std::vector<QuantizedEdge> edges;
  for_each_out_edge(v, [&](std::size_t target, double w) { edges.push_back({target, w}); });
  return edges;
}

std::optional<QuantizedPath> shortest_quantized_path(const QuantizedGraph& graph) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t n = graph.vertex_count();
  const Point goal = graph.position(QuantizedGraph::kEnd);
  std::vector<double> potential(n);
  for (std::size_t v = 0; v < n; ++v) potential[v] = distance(graph.position(v), goal);

  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> prev(n, n);
  std::vector<char> settled(n, 0);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  dist[QuantizedGraph::kStart] = 0.0;
  open.push({potential[QuantizedGraph::kStart], QuantizedGraph::kStart});

  while (!open.empty()) {
    const auto [key, u] = open.top();
    open.pop();
    if (settled[u]) continue;
    settled[u] = 1;
    if (u == QuantizedGraph::kEnd) break;
    const double base = dist[u];
    graph.for_each_out_edge(u, [&](std::size_t v, double w) {
      const double candidate = base + w;
      if (candidate < dist[v] && candidate + potential[v] < dist[QuantizedGraph::kEnd]) {
        dist[v] = candidate;
        prev[v] = u;
        open.push({candidate + potential[v], v});
      }
    });
  }
  if (!settled[QuantizedGraph::kEnd]) return std::nullopt;

  QuantizedPath path;
  path.length = dist[QuantizedGraph::kEnd];
  for (std::size_t v = QuantizedGraph::kEnd; v != n; v = prev[v]) path.vertices.push_back(v);
  std::reverse(path.vertices.begin(), path.vertices.end());
  return path;
}

Plan plan_method2(const Scenario& scenario, double snr_target, std::size_t quant_levels) {
  if (quant_levels < 2) {
    throw PlanningError(ErrorCode::InvalidQuantLevels, "need at least two quantization levels");
  }
  const ConnectivityRequirement req = coverage_radius(scenario, snr_target);
  const QuantizedGraph graph = build_quantized_graph(scenario, req, quant_levels);
  const auto path = shortest_quantized_path(graph);
  if (!path) {
    throw PlanningError(ErrorCode::Infeasible, "goal unreachable in the quantized graph");
  }

  AssociationSequence seq;
  HandoverPoints handovers;
  handovers.points.push_back(scenario.start);
  const auto& vs = path->vertices;
  if (vs.size() == 2) {
    seq.indices.push_back(*graph.direct_gbs());
  } else {
    for (std::size_t k = 1; k + 1 < vs.size(); ++k) {
      const QuantizedVertex label = graph.label(vs[k]);
      seq.indices.push_back(label.from);
      handovers.points.push_back(graph.position(vs[k]));
    }
    seq.indices.push_back(graph.label(vs[vs.size() - 2]).to);
  }
  handovers.points.push_back(scenario.goal);

  Plan plan = make_plan(scenario, std::move(seq), std::move(handovers), snr_target, req.radius,
                        "m2-Q" + std::to_string(quant_levels));
  plan.warnings = graph.warnings();
  if (!plan.sequence.is_simple()) {
    plan.warnings.push_back("association sequence revisits a GBS");
  }
  return plan;
}

double method2_gap_bound(std::size_t num_gbs, double radius, std::size_t quant_levels) {
  if (quant_levels < 2) {
    throw PlanningError(ErrorCode::InvalidQuantLevels, "need at least two quantization levels");
  }
  const double m_minus_1 = num_gbs > 0 ? static_cast<double>(num_gbs - 1) : 0.0;
  return 4.0 * m_minus_1 * radius *
         std::sin(std::numbers::pi / (4.0 * static_cast<double>(quant_levels - 1)));
}

}  // namespace skylink
