#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "skylink/plan.hpp"
#include "skylink/scenario.hpp"

namespace skylink {

// Q points spread uniformly in angle over the arc of g_m's coverage circle
// that lies inside g_n's coverage disk. q = 1 sits at angle phi - theta/2 and
// q = Q at phi + theta/2, where phi is the direction of g_n - g_m.
//
// Throws InvalidQuantLevels for Q < 2 and NoOverlap when the disks are apart.
std::vector<Point> quantize_boundary(Point gm, Point gn, double radius, std::size_t quant_levels);

struct QuantizedVertex {
  enum class Kind { Start, End, Boundary };
  Kind kind = Kind::Start;
  std::size_t from = 0;   // m
  std::size_t to = 0;     // n
  std::size_t level = 0;  // q in 1..Q
};

struct QuantizedEdge {
  std::size_t target = 0;
  double weight = 0.0;
};

// Directed graph over quantized handover points. Vertex 0 is the start,
// vertex 1 the goal, and 2 + pair * Q + (q - 1) the q-th point of an ordered
// overlapping GBS pair. Edges are generated on demand from the pair-level
// adjacency:
//   start -> (m,n,q)       when the start is covered by m
//   (m,n,q) -> (n,l,q')    when m, n, l are pairwise distinct and both pairs overlap
//   (m,n,q) -> goal        when the goal is covered by n
//   start -> goal          when a single GBS covers both (one-segment flights)
class QuantizedGraph {
 public:
  static constexpr std::size_t kStart = 0;
  static constexpr std::size_t kEnd = 1;

  std::size_t quant_levels() const { return quant_levels_; }
  double radius() const { return radius_; }
  std::size_t num_gbs() const { return num_gbs_; }
  std::size_t pair_count() const { return pairs_.size(); }
  std::size_t vertex_count() const { return 2 + pairs_.size() * quant_levels_; }
  std::size_t edge_count() const;

  QuantizedVertex label(std::size_t v) const;
  Point position(std::size_t v) const;
  std::optional<std::size_t> vertex_of(std::size_t from, std::size_t to, std::size_t level) const;
  std::vector<QuantizedEdge> out_edges(std::size_t v) const;

  // Calls visit(target, weight) for every out-edge of v.
  template <typename Visit>
  void for_each_out_edge(std::size_t v, Visit&& visit) const {
    const std::size_t levels = quant_levels_;
    auto visit_pair = [&](Point from, std::size_t pair) {
      const std::size_t base = 2 + pair * levels;
      for (std::size_t q = 0; q < levels; ++q) {
        visit(base + q, distance(from, points_[pair * levels + q]));
      }
    };
    if (v == kEnd) return;
    if (v == kStart) {
      for (std::size_t p = 0; p < pairs_.size(); ++p) {
        if (pairs_[p].start_covered) visit_pair(start_, p);
      }
      if (direct_gbs_) visit(kEnd, distance(start_, goal_));
      return;
    }
    const Pair& pair = pairs_[pair_of(v)];
    const Point here = points_[v - 2];
    for (std::size_t next : pair.successors) visit_pair(here, next);
    if (pair.goal_covered) visit(kEnd, distance(here, goal_));
  }

  // GBS serving a direct start -> goal flight, if any.
  std::optional<std::size_t> direct_gbs() const { return direct_gbs_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend QuantizedGraph build_quantized_graph(const Scenario&, const ConnectivityRequirement&,
                                              std::size_t);

  struct Pair {
    std::size_t from = 0;
    std::size_t to = 0;
    bool start_covered = false;  // start inside disk of `from`
    bool goal_covered = false;   // goal inside disk of `to`
    std::vector<std::size_t> successors;  // pair ids (to, l), l != from
  };

  std::size_t pair_of(std::size_t v) const { return (v - 2) / quant_levels_; }

  std::size_t quant_levels_ = 2;
  double radius_ = 0.0;
  std::size_t num_gbs_ = 0;
  Point start_;
  Point goal_;
  std::vector<Pair> pairs_;
  std::vector<long> pair_index_;  // num_gbs^2, -1 when no overlap
  std::vector<Point> points_;     // pairs * Q
  std::optional<std::size_t> direct_gbs_;
  std::vector<std::string> warnings_;
};

QuantizedGraph build_quantized_graph(const Scenario& scenario, const ConnectivityRequirement& req,
                                     std::size_t quant_levels);

struct QuantizedPath {
  std::vector<std::size_t> vertices;  // start ... goal
  double length = 0.0;
};

// Dijkstra from the start with the straight-line distance to the goal as a
// consistent potential. Empty when the goal is unreachable.
std::optional<QuantizedPath> shortest_quantized_path(const QuantizedGraph& graph);

// Shortest path over the quantized graph, read back as a plan. Method tag
// "m2-Q<levels>". Throws UnachievableSnr, Infeasible, InvalidQuantLevels.
Plan plan_method2(const Scenario& scenario, double snr_target, std::size_t quant_levels);

// 4 (M - 1) radius sin(pi / (4 (Q - 1))).
double method2_gap_bound(std::size_t num_gbs, double radius, std::size_t quant_levels);

}  // namespace skylink
