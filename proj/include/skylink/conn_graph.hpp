#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "skylink/association.hpp"
#include "skylink/scenario.hpp"

namespace skylink {

enum class VertexKind { Start, Gbs, End };

struct VertexId {
  VertexKind kind = VertexKind::Start;
  std::size_t gbs = 0;  // meaningful only for VertexKind::Gbs

  friend bool operator==(const VertexId&, const VertexId&) = default;
};

struct GraphEdge {
  std::size_t u = 0;  // dense vertex index, u < v
  std::size_t v = 0;
  double weight = 0.0;
};

// Undirected coverage-overlap graph over {U0, G_0..G_{M-1}, UF}. Dense vertex
// indices: 0 is the start, 1..M the GBSs, M+1 the goal.
class FeasibilityGraph {
 public:
  FeasibilityGraph(std::size_t num_gbs, double radius);

  std::size_t num_gbs() const { return num_gbs_; }
  std::size_t vertex_count() const { return num_gbs_ + 2; }
  double radius() const { return radius_; }

  std::size_t start_index() const { return 0; }
  std::size_t end_index() const { return num_gbs_ + 1; }
  std::size_t gbs_index(std::size_t m) const { return m + 1; }
  VertexId vertex(std::size_t index) const;
  std::size_t index_of(VertexId id) const;

  void add_edge(std::size_t u, std::size_t v, double weight);
  bool has_edge(std::size_t u, std::size_t v) const;
  // Weight of an existing edge; NaN when absent.
  double weight(std::size_t u, std::size_t v) const;
  // Neighbours in increasing index order.
  const std::vector<std::size_t>& neighbors(std::size_t u) const { return adjacency_[u]; }
  std::vector<GraphEdge> edges() const;
  std::size_t edge_count() const;

  std::string label(std::size_t index) const;

 private:
  std::size_t num_gbs_;
  double radius_;
  std::vector<double> weights_;  // dense (M+2)^2, NaN = no edge
  std::vector<std::vector<std::size_t>> adjacency_;
};

FeasibilityGraph build_feasibility_graph(const Scenario& scenario,
                                         const ConnectivityRequirement& req);

// True iff the goal is reachable from the start (breadth-first search).
bool check_feasibility(const FeasibilityGraph& graph);

// Convenience: build the graph at `snr_target` and check it. An unachievable
// SNR target is reported as infeasible.
bool is_feasible(const Scenario& scenario, double snr_target);

// Smallest coverage radius at which the mission is feasible: the minimax path
// value where start/goal edges cost their length and GBS-GBS edges half
// their length.
double bottleneck_radius(const Scenario& scenario);

// Largest SNR target for which the mission is feasible.
double bottleneck_max_snr(const Scenario& scenario);

struct AssociationPath {
  AssociationSequence sequence;
  double weight = 0.0;  // Dijkstra label of the goal vertex
};

// Minimum-weight start-to-goal path. Equal labels resolve to the lower vertex
// index. Throws PlanningError(Infeasible) when the goal is unreachable.
AssociationPath shortest_association(const FeasibilityGraph& graph);

// Debug dump, one "u v weight_m" line per edge.
void write_edge_list(std::ostream& out, const FeasibilityGraph& graph);

}  // namespace skylink
