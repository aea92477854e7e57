#include "skylink/conn_graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <ostream>

#include "skylink/errors.hpp"
#include "skylink/scenario_io.hpp"

namespace skylink {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNoEdge = std::numeric_limits<double>::quiet_NaN();

}  // namespace

bool AssociationSequence::is_simple() const {
  std::vector<std::size_t> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

FeasibilityGraph::FeasibilityGraph(std::size_t num_gbs, double radius)
    : num_gbs_(num_gbs),
      radius_(radius),
      weights_((num_gbs + 2) * (num_gbs + 2), kNoEdge),
      adjacency_(num_gbs + 2) {}

VertexId FeasibilityGraph::vertex(std::size_t index) const {
  if (index == 0) return {VertexKind::Start, 0};
  if (index == num_gbs_ + 1) return {VertexKind::End, 0};
  return {VertexKind::Gbs, index - 1};
}

std::size_t FeasibilityGraph::index_of(VertexId id) const {
  switch (id.kind) {
    case VertexKind::Start: return start_index();
    case VertexKind::End: return end_index();
    case VertexKind::Gbs: return gbs_index(id.gbs);
  }
  return 0;
}

void FeasibilityGraph::add_edge(std::size_t u, std::size_t v, double weight) {
  const std::size_t n = vertex_count();
  if (std::isnan(weights_[u * n + v])) {
    auto insert_sorted = [](std::vector<std::size_t>& list, std::size_t x) {
      list.insert(std::upper_bound(list.begin(), list.end(), x), x);
    };
    insert_sorted(adjacency_[u], v);
    insert_sorted(adjacency_[v], u);
  }
  weights_[u * n + v] = weight;
  weights_[v * n + u] = weight;
}

bool FeasibilityGraph::has_edge(std::size_t u, std::size_t v) const {
  return !std::isnan(weights_[u * vertex_count() + v]);
}

double FeasibilityGraph::weight(std::size_t u, std::size_t v) const {
  return weights_[u * vertex_count() + v];
}

std::vector<GraphEdge> FeasibilityGraph::edges() const {
  std::vector<GraphEdge> out;
  for (std::size_t u = 0; u < vertex_count(); ++u) {
    for (std::size_t v : adjacency_[u]) {
      if (u < v) out.push_back({u, v, weight(u, v)});
    }
  }
  return out;
}

std::size_t FeasibilityGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& list : adjacency_) twice += list.size();
  return twice / 2;
}

std::string FeasibilityGraph::label(std::size_t index) const {
  const VertexId id = vertex(index);
  switch (id.kind) {
    case VertexKind::Start: return "U0";
    case VertexKind::End: return "UF";
    case VertexKind::Gbs: return "G" + std::to_string(id.gbs);
  }
  return "?";
}

FeasibilityGraph build_feasibility_graph(const Scenario& scenario,
                                         const ConnectivityRequirement& req) {
  const std::size_t m_count = scenario.num_gbs();
  const double r = req.radius;
  FeasibilityGraph graph(m_count, r);
  for (std::size_t m = 0; m < m_count; ++m) {
    const Point g = scenario.gbs[m];
    const double d0 = distance(scenario.start, g);
    if (d0 <= r) graph.add_edge(graph.start_index(), graph.gbs_index(m), d0);
    for (std::size_t n = m + 1; n < m_count; ++n) {
      const double dg = distance(g, scenario.gbs[n]);
      if (dg <= 2.0 * r) graph.add_edge(graph.gbs_index(m), graph.gbs_index(n), dg);
    }
    const double df = distance(scenario.goal, g);
    if (df <= r) graph.add_edge(graph.gbs_index(m), graph.end_index(), df);
  }
  return graph;
}

bool check_feasibility(const FeasibilityGraph& graph) {
  std::vector<char> seen(graph.vertex_count(), 0);
  std::deque<std::size_t> queue{graph.start_index()};
  seen[graph.start_index()] = 1;
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (u == graph.end_index()) return true;
    for (std::size_t v : graph.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
    }
  }
  return false;
}

bool is_feasible(const Scenario& scenario, double snr_target) {
  ConnectivityRequirement req;
  try {
    req = coverage_radius(scenario, snr_target);
  } catch (const PlanningError& e) {
    if (e.code() == ErrorCode::UnachievableSnr) return false;
    throw;
  }
  return check_feasibility(build_feasibility_graph(scenario, req));
}

double bottleneck_radius(const Scenario& scenario) {
  const std::size_t m_count = scenario.num_gbs();
  const std::size_t n = m_count + 2;
  const std::size_t start = 0;
  const std::size_t end = m_count + 1;

  // Radius each edge needs to exist in the feasibility graph.
  auto requirement = [&](std::size_t u, std::size_t v) {
    if (u > v) std::swap(u, v);
    if (u == start && v == end) return kInf;
    if (u == start) return distance(scenario.start, scenario.gbs[v - 1]);
    if (v == end) return distance(scenario.goal, scenario.gbs[u - 1]);
    return 0.5 * distance(scenario.gbs[u - 1], scenario.gbs[v - 1]);
  };

  std::vector<double> best(n, kInf);
  std::vector<char> done(n, 0);
  best[start] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && (u == n || best[v] < best[u])) u = v;
    }
    if (u == n || best[u] == kInf) break;
    if (u == end) break;
    done[u] = 1;
    for (std::size_t v = 0; v < n; ++v) {
      if (done[v] || v == u) continue;
      const double through = std::max(best[u], requirement(u, v));
      if (through < best[v]) best[v] = through;
    }
  }
  return best[end];
}

double bottleneck_max_snr(const Scenario& scenario) {
  return snr_for_radius(scenario, bottleneck_radius(scenario));
}

AssociationPath shortest_association(const FeasibilityGraph& graph) {
  const std::size_t n = graph.vertex_count();
  std::vector<double> dist(n, kInf);
  std::vector<std::size_t> prev(n, n);
  std::vector<char> done(n, 0);
  dist[graph.start_index()] = 0.0;
  for (std::size_t iter = 0; iter < n; ++iter) {
    std::size_t u = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!done[v] && dist[v] < kInf && (u == n || dist[v] < dist[u])) u = v;
    }
    if (u == n) break;
    done[u] = 1;
    if (u == graph.end_index()) break;
    for (std::size_t v : graph.neighbors(u)) {
      if (done[v]) continue;
      const double candidate = dist[u] + graph.weight(u, v);
      if (candidate < dist[v]) {
        dist[v] = candidate;
        prev[v] = u;
      }
    }
  }
  if (!done[graph.end_index()]) {
    throw PlanningError(ErrorCode::Infeasible, "goal is not reachable in the feasibility graph");
  }
  AssociationPath path;
  path.weight = dist[graph.end_index()];
  for (std::size_t v = prev[graph.end_index()]; v != graph.start_index(); v = prev[v]) {
    path.sequence.indices.push_back(v - 1);
  }
  std::reverse(path.sequence.indices.begin(), path.sequence.indices.end());
  return path;
}

void write_edge_list(std::ostream& out, const FeasibilityGraph& graph) {
  for (const GraphEdge& e : graph.edges()) {
    out << graph.label(e.u) << ' ' << graph.label(e.v) << ' ' << format_double(e.weight) << '\n';
  }
}

}  // namespace skylink
