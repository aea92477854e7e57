#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "skylink/baselines.hpp"
#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"
#include "skylink/method2.hpp"
#include "test_support.hpp"

using namespace skylink;
namespace t = skylink::testing;

TEST_CASE("quantized boundary points") {
  const auto pts = quantize_boundary({0, 0}, {1000, 0}, 1000.0, 2);
  REQUIRE(pts.size() == 2);
  CHECK(pts[0].x == doctest::Approx(500.0));
  CHECK(pts[0].y == doctest::Approx(-866.03).epsilon(1e-5));
  CHECK(pts[1].x == doctest::Approx(500.0));
  CHECK(pts[1].y == doctest::Approx(866.03).epsilon(1e-5));
  for (const Point& p : pts) {
    CHECK(t::dist(p, {0, 0}) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(t::dist(p, {1000, 0}) == doctest::Approx(1000.0).epsilon(1e-12));
  }
}

TEST_CASE("quantized points of tangent disks collapse to the midpoint") {
  for (const Point& p : quantize_boundary({0, 0}, {2000, 0}, 1000.0, 5)) {
    CHECK(p.x == doctest::Approx(1000.0));
    CHECK(std::abs(p.y) < 1e-9);
  }
}

TEST_CASE("quantized points lie on the circle and inside the partner disk") {
  std::mt19937_64 rng(71);
  std::uniform_real_distribution<double> u(0.0, 3000.0);
  for (int trial = 0; trial < 500; ++trial) {
    const Point a{u(rng), u(rng)};
    const Point b{u(rng), u(rng)};
    const double r = std::max(t::dist(a, b) / 2.0, 1.0) * std::uniform_real_distribution<double>(1.0, 2.0)(rng);
    const std::size_t q = 2 + rng() % 30;
    const auto pts = quantize_boundary(a, b, r, q);
    const auto expected = t::arc_points(a, b, r, q);
    REQUIRE(pts.size() == q);
    for (std::size_t k = 0; k < q; ++k) {
      CHECK(std::abs(t::dist(pts[k], a) - r) <= 1e-9 * r);
      CHECK(t::dist(pts[k], b) <= r * (1 + 1e-9));
      CHECK(t::dist(pts[k], expected[k]) <= 1e-9 * r);
    }
  }
}

TEST_CASE("quantization errors") {
  CHECK_THROWS_AS(quantize_boundary({0, 0}, {1000, 0}, 1000.0, 1), PlanningError);
  try {
    (void)quantize_boundary({0, 0}, {3000, 0}, 1000.0, 4);
    FAIL("expected NoOverlap");
  } catch (const PlanningError& e) {
    CHECK(e.code() == ErrorCode::NoOverlap);
  }
}

TEST_CASE("two GBS quantized graph") {
  Scenario s;
  s.gbs = {{0, 0}, {1500, 0}};
  s.start = {-500, 0};
  s.goal = {2000, 0};
  const double r = 1000.0;
  const QuantizedGraph g = build_quantized_graph(s, {snr_for_radius(s, r), r}, 4);
  CHECK(g.vertex_count() == 2 + 2 * 4);
  CHECK(g.pair_count() == 2);
  for (std::size_t q = 1; q <= 4; ++q) {
    CHECK(g.vertex_of(0, 1, q).has_value());
    CHECK(g.vertex_of(1, 0, q).has_value());
  }
  // Start is covered only by GBS 0, so it feeds the (0, 1) points.
  const auto out = g.out_edges(QuantizedGraph::kStart);
  REQUIRE(out.size() == 4);
  for (const QuantizedEdge& e : out) {
    const QuantizedVertex v = g.label(e.target);
    CHECK(v.kind == QuantizedVertex::Kind::Boundary);
    CHECK(v.from == 0);
    CHECK(v.to == 1);
    CHECK(e.weight == doctest::Approx(t::dist(s.start, g.position(e.target))));
  }
  // (0, 1, q) -> goal since the goal is in GBS 1's disk; no (0,1) -> (1,0).
  const auto mid = g.out_edges(*g.vertex_of(0, 1, 2));
  REQUIRE(mid.size() == 1);
  CHECK(mid[0].target == QuantizedGraph::kEnd);
}

TEST_CASE("quantized graph structure on random scenarios") {
  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 2 + rng() % 6;
    const Scenario s = t::random_scenario(rng, m, 5000.0);
    const double r = std::uniform_real_distribution<double>(800.0, 2000.0)(rng);
    const std::size_t q = 2 + rng() % 6;
    const QuantizedGraph g = build_quantized_graph(s, {snr_for_radius(s, r), r}, q);
    CHECK(g.vertex_count() <= 2 + m * (m - 1) * q);
    std::size_t edges = 0;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      for (const QuantizedEdge& e : g.out_edges(v)) {
        ++edges;
        CHECK(e.weight == doctest::Approx(t::dist(g.position(v), g.position(e.target))));
        if (v == QuantizedGraph::kStart || e.target == QuantizedGraph::kEnd) continue;
        const QuantizedVertex a = g.label(v);
        const QuantizedVertex b = g.label(e.target);
        CHECK(a.to == b.from);
        CHECK(a.from != b.to);
      }
    }
    CHECK(edges == g.edge_count());
  }
}

TEST_CASE("method two verdicts follow feasibility and handovers sit on boundaries") {
  std::mt19937_64 rng(79);
  for (int trial = 0; trial < 80; ++trial) {
    const Scenario s = t::random_scenario(rng, 1 + rng() % 7, 5000.0);
    const double snr = from_db(std::uniform_real_distribution<double>(8.0, 28.0)(rng));
    const bool feasible = is_feasible(s, snr);
    try {
      const Plan plan = plan_method2(s, snr, 8);
      CHECK(feasible);
      CHECK(plan.method_tag == "m2-Q8");
      CHECK(plan.sequence.is_simple());
      CHECK(validate_trajectory(s, plan.trajectory, snr, 1.0).passed);
      for (std::size_t i = 1; i + 1 < plan.handovers.size(); ++i) {
        const Point g_out = s.gbs[plan.sequence[i - 1]];
        const Point g_in = s.gbs[plan.sequence[i]];
        CHECK(std::abs(t::dist(plan.handovers[i], g_out) - plan.radius) <= 1e-9 * plan.radius);
        CHECK(t::dist(plan.handovers[i], g_in) <= plan.radius * (1 + 1e-9));
      }
    } catch (const PlanningError& e) {
      CHECK_FALSE(feasible);
      CHECK((e.code() == ErrorCode::Infeasible || e.code() == ErrorCode::UnachievableSnr));
    }
  }
}

TEST_CASE("method two path matches a plain dynamic program over sequences") {
  std::mt19937_64 rng(83);
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 40; ++trial) {
    const std::size_t m = 2 + rng() % 5;
    const Scenario s = t::random_scenario(rng, m, 5000.0);
    const double r = std::uniform_real_distribution<double>(900.0, 2000.0)(rng);
    if (!t::brute_force_feasible(s, r)) continue;
    ++checked;
    const std::size_t q = 6;
    double best = std::numeric_limits<double>::infinity();
    t::for_each_distinct_sequence(m, [&](const std::vector<std::size_t>& seq) {
      if (t::sequence_ok(s, seq, r)) best = std::min(best, t::quantized_sequence_length(s, seq, r, q));
      return true;
    });
    const Plan plan = plan_method2(s, snr_for_radius(s, r), q);
    CHECK(plan.length == doctest::Approx(best).epsilon(1e-9));
  }
  CHECK(checked == 40);
}

TEST_CASE("method two gap bound") {
  CHECK(method2_gap_bound(25, 1410.4, 16) == doctest::Approx(7086.2).epsilon(1e-4));
  CHECK(method2_gap_bound(25, 1410.4, 1000000) < 0.2);
  for (std::size_t q : {64, 128, 512}) {
    const double approx = 24 * 1410.4 * std::numbers::pi / static_cast<double>(q - 1);
    CHECK(method2_gap_bound(25, 1410.4, q) == doctest::Approx(approx).epsilon(0.01));
  }
  CHECK_THROWS_AS(method2_gap_bound(25, 1410.4, 1), PlanningError);
}
