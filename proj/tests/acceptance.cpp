// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit when any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "skylink/baselines.hpp"
#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"
#include "skylink/experiments.hpp"
#include "skylink/method1.hpp"
#include "skylink/method2.hpp"
#include "skylink/refine.hpp"
#include "test_support.hpp"

using namespace skylink;
namespace t = skylink::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Plans produced by the other criteria, checked for validity at the end.
struct PlanLog {
  std::size_t plans = 0;
  std::size_t valid = 0;
  std::size_t non_simple = 0;
  std::size_t off_boundary = 0;
  double worst_relative_snr = 1.0;

  void add(const Scenario& s, const Plan& plan) {
    ++plans;
    const ValidationReport report = validate_trajectory(s, plan.trajectory, plan.snr_target, 1.0);
    if (report.passed) ++valid;
    worst_relative_snr = std::min(worst_relative_snr, report.worst_snr / plan.snr_target);
    if (!plan.sequence.is_simple()) ++non_simple;
    if (plan.method_tag.rfind("m2", 0) == 0) {
      for (std::size_t i = 1; i + 1 < plan.handovers.size(); ++i) {
        const double d = t::dist(plan.handovers[i], s.gbs[plan.sequence[i - 1]]);
        const double inside = t::dist(plan.handovers[i], s.gbs[plan.sequence[i]]);
        if (std::abs(d - plan.radius) > 1e-9 * plan.radius || inside > plan.radius * (1 + 1e-9)) {
          ++off_boundary;
        }
      }
    }
  }
};

PlanLog g_plans;

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

bool report(int id, const char* name, double budget_s, const std::function<Outcome()>& run) {
  const auto begin = Clock::now();
  Outcome out;
  try {
    out = run();
  } catch (const std::exception& e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - begin).count();
  const bool in_time = budget_s <= 0.0 || secs < budget_s;
  const bool pass = out.pass && in_time;
  std::printf("[%s] %d %s: %s; %.1f s", pass ? "PASS" : "FAIL", id, name, out.detail.c_str(), secs);
  if (budget_s > 0.0) std::printf(" (budget %.0f s)", budget_s);
  std::printf("\n");
  std::fflush(stdout);
  return pass;
}

Scenario square_scenario(std::mt19937_64& rng, std::size_t m, Point start, Point goal) {
  std::uniform_real_distribution<double> u(0.0, 10000.0);
  Scenario s;
  for (std::size_t i = 0; i < m; ++i) s.gbs.push_back({u(rng), u(rng)});
  s.start = start;
  s.goal = goal;
  return s;
}

Outcome feasibility_equivalence() {
  std::mt19937_64 rng(1001);
  std::size_t cases = 0, agree = 0, feasible = 0;
  for (int k = 0; k < 200; ++k) {
    const std::size_t m = 1 + rng() % 8;
    const Scenario s = t::random_scenario(rng, m, 5000.0);
    for (int j = 0; j < 5; ++j) {
      const double db = std::uniform_real_distribution<double>(10.0, 26.0)(rng);
      const double r = t::oracle_radius(s, from_db(db));
      const bool expected = t::brute_force_feasible(s, r);
      const bool got = check_feasibility(build_feasibility_graph(s, coverage_radius(s, from_db(db))));
      ++cases;
      if (got == expected) ++agree;
      if (expected) ++feasible;
    }
  }
  return {agree == cases, fmt("%zu/%zu agree (%zu feasible)", agree, cases, feasible)};
}

Outcome bottleneck_bisection() {
  std::mt19937_64 rng(1002);
  double worst = 0.0;
  for (int k = 0; k < 500; ++k) {
    const std::size_t m = 1 + rng() % 25;
    const Scenario s = square_scenario(rng, m, {2000, 2000}, {8000, 8000});
    const double h = s.uav_altitude - s.gbs_altitude;
    double hi = to_db(s.ref_snr / (h * h));
    double lo = hi - 80.0;
    for (int it = 0; it < 40; ++it) {
      const double mid = 0.5 * (lo + hi);
      (is_feasible(s, from_db(mid)) ? lo : hi) = mid;
    }
    worst = std::max(worst, std::abs(to_db(bottleneck_max_snr(s)) - 0.5 * (lo + hi)));
  }
  return {worst <= 0.01, fmt("max |difference| %.2e dB over 500 scenarios", worst)};
}

struct Instance {
  Scenario scenario;
  double snr = 0.0;
  double radius = 0.0;
};

std::vector<Instance> small_instances() {
  std::mt19937_64 rng(1003);
  std::vector<Instance> out;
  while (out.size() < 300) {
    const std::size_t m = 2 + rng() % 6;
    Instance in;
    in.scenario = square_scenario(rng, m, {2000, 2000}, {8000, 8000});
    const double top = to_db(bottleneck_max_snr(in.scenario));
    in.snr = from_db(top - std::uniform_real_distribution<double>(0.0, 6.0)(rng));
    in.radius = coverage_radius(in.scenario, in.snr).radius;
    out.push_back(in);
  }
  return out;
}

struct SmallResults {
  std::vector<Plan> exhaustive;
  std::vector<Plan> m1;
  std::vector<std::vector<Plan>> m2;  // per Q
};

const std::vector<std::size_t> kLevels{4, 16, 64};
constexpr double kOracleSlack = 1e-6;  // meters; refinement accuracy of the oracle

Outcome method2_bound(const std::vector<Instance>& instances, SmallResults& res) {
  std::size_t ok = 0, total = 0;
  double worst_ratio = 0.0, min_gap = 0.0;
  ExhaustiveOptions opts;
  for (const Instance& in : instances) {
    const Plan best = exhaustive_plan(in.scenario, in.snr, opts);
    res.exhaustive.push_back(best);
    g_plans.add(in.scenario, best);
    std::vector<Plan> per_q;
    for (std::size_t q : kLevels) {
      const Plan p = plan_method2(in.scenario, in.snr, q);
      g_plans.add(in.scenario, p);
      const double gap = p.length - best.length;
      const double bound = method2_gap_bound(in.scenario.num_gbs(), in.radius, q);
      ++total;
      if (gap >= -kOracleSlack && gap <= bound) ++ok;
      min_gap = std::min(min_gap, gap);
      worst_ratio = std::max(worst_ratio, gap / bound);
      per_q.push_back(p);
    }
    res.m2.push_back(std::move(per_q));
  }
  return {ok == total, fmt("%zu/%zu within [0, bound]; max gap/bound %.3f; min gap %.2e m", ok, total,
                           worst_ratio, min_gap)};
}

Outcome method1_bound(const std::vector<Instance>& instances, SmallResults& res) {
  std::size_t ok = 0;
  double worst_ratio = 0.0, min_gap = 0.0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    const Instance& in = instances[k];
    const Plan p = plan_method1(in.scenario, in.snr);
    g_plans.add(in.scenario, p);
    res.m1.push_back(p);
    const double gap = p.length - res.exhaustive[k].length;
    const double bound = method1_gap_bound(in.scenario.num_gbs(), in.radius);
    const bool chain = p.length <= association_upper_bound(in.scenario, p.sequence) + 1e-9;
    if (gap >= -kOracleSlack && gap <= bound && chain) ++ok;
    min_gap = std::min(min_gap, gap);
    worst_ratio = std::max(worst_ratio, gap / bound);
  }
  return {ok == instances.size(), fmt("%zu/%zu within [0, 2M r] and below the GBS polyline; max gap/bound "
                                      "%.3f; min gap %.2e m",
                                      ok, instances.size(), worst_ratio, min_gap)};
}

Outcome cdf_reproduction() {
  ExperimentConfig c;
  c.trials = 1000;
  const std::vector<double> densities{0.1, 0.8, 1.6};
  const std::vector<double> expected{1.12, 3.0, 3.65};
  const CdfReport rep = run_cdf_experiment(c, densities);
  bool ok = true;
  std::string detail;
  for (std::size_t i = 0; i < densities.size(); ++i) {
    const double gain = rep.summaries[i].median_gain_db;
    ok = ok && std::abs(gain - expected[i]) <= 0.5;
    if (i > 0) ok = ok && gain > rep.summaries[i - 1].median_gain_db;
    detail += fmt("%slambda=%.1f gain %.3f dB (target %.2f)", i ? ", " : "", densities[i], gain, expected[i]);
  }
  return {ok, detail};
}

Outcome near_optimality() {
  ExperimentConfig c;
  c.density = 0.25;
  c.start = {1000, 1000};
  c.goal = {9000, 9000};
  c.base_seed = 2024;
  std::size_t points = 0, within = 0;
  double worst_q16 = 0.0, sum_m1 = 0.0, worst_m1 = 0.0;
  for (std::size_t trial = 0; trial < 20; ++trial) {
    const Scenario s = generate_scenario(c, trial);
    for (double db : default_snr_grid(s, c)) {
      const double snr = from_db(db);
      if (!is_feasible(s, snr)) continue;
      const Plan ref = plan_method2(s, snr, 512);
      const Plan q16 = plan_method2(s, snr, 16);
      const Plan m1 = plan_method1(s, snr);
      g_plans.add(s, ref);
      g_plans.add(s, q16);
      g_plans.add(s, m1);
      const double rel16 = std::abs(q16.completion_time - ref.completion_time) / ref.completion_time;
      const double rel1 = (m1.completion_time - ref.completion_time) / ref.completion_time;
      ++points;
      if (rel16 <= 0.01) ++within;
      worst_q16 = std::max(worst_q16, rel16);
      sum_m1 += rel1;
      worst_m1 = std::max(worst_m1, rel1);
    }
  }
  const double mean_m1 = sum_m1 / static_cast<double>(points);
  return {within == points && mean_m1 < 0.10,
          fmt("Q=16 within 1%% at %zu/%zu points (worst %.3f%%); Method I mean excess %.3f%% (worst %.3f%%)",
              within, points, 100 * worst_q16, 100 * mean_m1, 100 * worst_m1)};
}

Outcome structural(const std::vector<Instance>& instances, const SmallResults& res) {
  std::vector<std::string> failures;
  if (g_plans.non_simple) failures.push_back(fmt("%zu plans repeat a GBS", g_plans.non_simple));
  if (g_plans.off_boundary) failures.push_back(fmt("%zu quantized handovers off boundary", g_plans.off_boundary));

  // Loop removal on synthesized looped sequences.
  std::mt19937_64 rng(1008);
  std::size_t loops = 0, loop_bad = 0;
  while (loops < 1000) {
    const Scenario s = t::random_scenario(rng, 6, 5000.0);
    const double r = 1500.0;
    std::vector<std::size_t> covering;
    for (std::size_t m = 0; m < s.gbs.size(); ++m) {
      if (t::dist(s.start, s.gbs[m]) <= r) covering.push_back(m);
    }
    if (covering.empty()) continue;
    std::vector<std::size_t> walk{covering[rng() % covering.size()]};
    std::size_t first = 0, second = 0;
    bool done = false;
    for (int step = 0; step < 40 && !done; ++step) {
      if (second > 0 && t::dist(s.goal, s.gbs[walk.back()]) <= r) {
        done = true;
        break;
      }
      std::vector<std::size_t> next;
      for (std::size_t m = 0; m < s.gbs.size(); ++m) {
        if (m != walk.back() && t::dist(s.gbs[m], s.gbs[walk.back()]) <= 2 * r) next.push_back(m);
      }
      if (next.empty()) break;
      walk.push_back(next[rng() % next.size()]);
      if (second == 0) {
        for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
          if (walk[i] == walk.back()) {
            first = i;
            second = walk.size() - 1;
            break;
          }
        }
      }
    }
    if (!done) continue;
    HandoverPoints hp;
    hp.points.push_back(s.start);
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      const Point a = s.gbs[walk[i]], b = s.gbs[walk[i + 1]];
      std::uniform_real_distribution<double> u(-r, r);
      Point p;
      do {
        p = {a.x + u(rng), a.y + u(rng)};
      } while (t::dist(p, a) > r || t::dist(p, b) > r);
      hp.points.push_back(p);
    }
    hp.points.push_back(s.goal);
    const AssociationSequence seq{walk};
    const LoopRemoval out = remove_loop(seq, hp, first, second);
    ++loops;
    if (path_length(out.handovers) > path_length(hp) + 1e-9 ||
        !handovers_feasible(s, out.sequence, out.handovers, r)) {
      ++loop_bad;
    }
  }
  if (loop_bad) failures.push_back(fmt("loop removal lengthened %zu/%zu", loop_bad, loops));

  // Snapping refined and planned handovers.
  std::size_t snaps = 0, snap_bad = 0;
  for (std::size_t k = 0; k < instances.size(); ++k) {
    for (const Plan* p : {&res.m1[k], &res.exhaustive[k]}) {
      const SnapResult snapped = snap_to_boundary(instances[k].scenario, p->sequence, p->handovers, p->radius);
      ++snaps;
      if (path_length(snapped.handovers) > path_length(p->handovers) + 1e-6) ++snap_bad;
    }
  }
  if (snap_bad) failures.push_back(fmt("snapping lengthened %zu/%zu", snap_bad, snaps));

  // Quantized boundary points.
  std::size_t qpoints = 0, qbad = 0;
  std::uniform_real_distribution<double> u(0.0, 3000.0);
  for (int k = 0; k < 2000; ++k) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)};
    const double r = std::max(t::dist(a, b) / 2.0, 1.0) * std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    for (const Point& p : quantize_boundary(a, b, r, 2 + rng() % 64)) {
      ++qpoints;
      if (std::abs(t::dist(p, a) - r) > 1e-9 * r || t::dist(p, b) > r * (1 + 1e-9)) ++qbad;
    }
  }
  if (qbad) failures.push_back(fmt("%zu/%zu quantized points off circle or outside partner", qbad, qpoints));

  std::string detail = fmt("%zu plans simple, %zu loops removed, %zu snaps, %zu quantized points", g_plans.plans,
                           loops, snaps, qpoints);
  for (const auto& f : failures) detail += "; " + f;
  return {failures.empty(), detail};
}

Outcome validity() {
  return {g_plans.valid == g_plans.plans,
          fmt("%zu/%zu plans pass at 1 m sampling; worst SNR/target %.12f", g_plans.valid, g_plans.plans,
              g_plans.worst_relative_snr)};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome determinism() {
  const auto root = std::filesystem::temp_directory_path() / "skylink_acceptance_determinism";
  std::filesystem::remove_all(root);
  std::vector<std::string> files;
  std::size_t compared = 0, differing = 0;
  std::vector<std::pair<std::string, std::string>> baseline;
  for (std::size_t workers : {1, 4, 8}) {
    for (int repeat = 0; repeat < 2; ++repeat) {
      const auto dir = root / fmt("w%zu_r%d", workers, repeat);
      ExperimentConfig cdf;
      cdf.trials = 300;
      cdf.workers = workers;
      cdf.base_seed = 7;
      const std::vector<double> densities{0.1, 0.8, 1.6};
      write_cdf_outputs(dir, cdf, densities, run_cdf_experiment(cdf, densities));

      ExperimentConfig sweep;
      sweep.workers = workers;
      sweep.base_seed = 7;
      sweep.grid_step_db = 0.5;
      sweep.exhaustive_budget = 2000;
      const Scenario s = generate_scenario(sweep, 0);
      write_sweep_outputs(dir, sweep, s, run_time_sweep(s, sweep));

      std::vector<std::pair<std::string, std::string>> current;
      for (const char* name : {"cdf_trials.csv", "cdf_curves.csv", "cdf_summary.csv", "sweep.csv"}) {
        current.emplace_back(name, slurp(dir / name));
      }
      if (baseline.empty()) {
        baseline = current;
        continue;
      }
      for (std::size_t i = 0; i < current.size(); ++i) {
        ++compared;
        if (current[i].second != baseline[i].second || current[i].second.empty()) ++differing;
      }
    }
  }
  std::filesystem::remove_all(root);
  return {differing == 0, fmt("%zu file comparisons across 1/4/8 workers, %zu differ", compared, differing)};
}

}  // namespace

int main() {
  bool all = true;
  all &= report(1, "feasibility oracle equivalence", 10, feasibility_equivalence);
  all &= report(2, "bottleneck vs bisection", 30, bottleneck_bisection);

  const std::vector<Instance> instances = small_instances();
  SmallResults res;
  all &= report(3, "Method II gap bound vs exhaustive optimum", 300,
                [&] { return method2_bound(instances, res); });
  all &= report(4, "Method I gap bound and polyline chain", 0, [&] { return method1_bound(instances, res); });
  all &= report(6, "median SNR gain over straight flight", 120, cdf_reproduction);
  all &= report(7, "near-optimality at M=25", 600, near_optimality);
  all &= report(8, "structural invariants", 0, [&] { return structural(instances, res); });
  all &= report(5, "trajectory validity of every plan", 0, validity);
  all &= report(9, "determinism across worker counts", 0, determinism);

  std::printf("%s\n", all ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED");
  return all ? 0 : 1;
}
