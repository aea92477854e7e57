#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "skylink/baselines.hpp"
#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"
#include "skylink/experiments.hpp"
#include "skylink/method1.hpp"
#include "skylink/method2.hpp"
#include "skylink/scenario_io.hpp"

namespace {

using namespace skylink;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonArgs {
  std::string scenario_file;
  std::uint64_t seed = 1;
  std::size_t trial = 0;
  std::size_t trials = 1000;
  std::vector<double> lambdas;
  double region_km = 10.0;
  std::size_t num_gbs = 0;
  std::string out;
  std::size_t workers = 1;
  std::vector<double> start_km;
  std::vector<double> goal_km;
  std::size_t path_budget = 1'000'000;
};

ExperimentConfig make_config(const CommonArgs& args) {
  ExperimentConfig config;
  config.base_seed = args.seed;
  config.trials = args.trials;
  config.region_km = args.region_km;
  config.num_gbs = args.num_gbs;
  config.workers = args.workers;
  if (!args.lambdas.empty()) config.density = args.lambdas.front();
  if (args.start_km.size() == 2) config.start = {args.start_km[0] * 1000.0, args.start_km[1] * 1000.0};
  if (args.goal_km.size() == 2) config.goal = {args.goal_km[0] * 1000.0, args.goal_km[1] * 1000.0};
  return config;
}

Scenario scenario_from_args(const CommonArgs& args) {
  if (!args.scenario_file.empty()) return load_scenario(args.scenario_file);
  return generate_scenario(make_config(args), args.trial);
}

void emit_json(const nlohmann::json& doc, const std::string& file) {
  if (file.empty()) {
    std::cout << doc.dump(2) << '\n';
    return;
  }
  std::ofstream out(file);
  if (!out) throw PlanningError(ErrorCode::Io, "cannot write " + file);
  out << doc.dump(2) << '\n';
}

void add_scenario_flags(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--scenario", args.scenario_file, "Scenario JSON file (otherwise generated)");
  cmd->add_option("--seed", args.seed, "Base seed for generated scenarios");
  cmd->add_option("--trial", args.trial, "Trial index for generated scenarios");
  cmd->add_option("--lambda", args.lambdas, "GBS density per km^2");
  cmd->add_option("--region-km", args.region_km, "Side of the square region in km");
  cmd->add_option("--num-gbs", args.num_gbs, "Explicit GBS count (overrides --lambda)");
  cmd->add_option("--start-km", args.start_km, "Start point x y in km")->expected(2);
  cmd->add_option("--goal-km", args.goal_km, "Goal point x y in km")->expected(2);
}

int run_plan(const Scenario& scenario, const std::string& method, double snr_db, std::size_t q,
             const CommonArgs& args) {
  const double snr = from_db(snr_db);
  Plan plan;
  if (method == "sf") {
    plan = plan_straight_flight(scenario, snr);
  } else if (method == "m1") {
    plan = plan_method1(scenario, snr);
  } else if (method == "m2") {
    plan = plan_method2(scenario, snr, q);
  } else {
    ExhaustiveOptions opts;
    opts.workers = args.workers;
    opts.path_budget = args.path_budget;
    plan = exhaustive_plan(scenario, snr, opts);
  }
  const nlohmann::json doc = plan_to_json(scenario, plan);
  if (args.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return kExitOk;
  }
  std::filesystem::create_directories(args.out);
  emit_json(doc, (std::filesystem::path(args.out) / "plan.json").string());
  std::ofstream csv(std::filesystem::path(args.out) / "trajectory.csv");
  if (!csv) throw PlanningError(ErrorCode::Io, "cannot write trajectory.csv");
  write_trajectory_csv(csv, scenario, plan.trajectory, 1.0);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"UAV trajectory planner with cellular connectivity constraints"};
  app.require_subcommand(1);

  CommonArgs args;
  double snr_db = 0.0;
  std::string method = "m1";
  std::size_t q = 16;
  std::string edges_file;

  auto* gen = app.add_subcommand("gen", "Emit a random scenario as JSON");
  add_scenario_flags(gen, args);
  gen->add_option("--out", args.out, "Output file (default stdout)");

  auto* feas = app.add_subcommand("feasibility", "Check whether a mission is feasible at an SNR target");
  add_scenario_flags(feas, args);
  feas->add_option("--snr-db", snr_db, "SNR target in dB")->required();
  feas->add_option("--edges", edges_file, "Write the feasibility graph edge list here");

  auto* maxsnr = app.add_subcommand("max-snr", "Largest feasible SNR target, overall and for straight flight");
  add_scenario_flags(maxsnr, args);

  auto* plan = app.add_subcommand("plan", "Plan a trajectory");
  add_scenario_flags(plan, args);
  plan->add_option("--method", method, "Planner")
      ->check(CLI::IsMember({"sf", "m1", "m2", "exhaustive"}));
  plan->add_option("--snr-db", snr_db, "SNR target in dB")->required();
  plan->add_option("--q", q, "Quantization levels for m2");
  plan->add_option("--out", args.out, "Directory for plan.json and trajectory.csv (default stdout)");
  plan->add_option("--workers", args.workers, "Worker threads for exhaustive search");
  plan->add_option("--budget", args.path_budget, "Path budget for exhaustive search");

  ExperimentConfig sweep_config;
  std::vector<double> grid;
  auto* sweep = app.add_subcommand("sweep", "Completion time versus SNR target for all planners");
  add_scenario_flags(sweep, args);
  sweep->add_option("--out", args.out, "Output directory")->required();
  sweep->add_option("--workers", args.workers, "Worker threads");
  sweep->add_option("--grid-db", grid, "Explicit SNR grid in dB");
  sweep->add_option("--q-levels", sweep_config.quant_levels, "Quantization levels for m2");
  sweep->add_option("--exhaustive-budget", sweep_config.exhaustive_budget,
                    "Path budget for the exhaustive column (0 disables)");

  auto* cdf = app.add_subcommand("cdf", "Monte-Carlo CDF of the maximum SNR target");
  cdf->add_option("--seed", args.seed, "Base seed");
  cdf->add_option("--trials", args.trials, "Trials per density");
  cdf->add_option("--lambda", args.lambdas, "GBS densities per km^2 (repeatable)");
  cdf->add_option("--region-km", args.region_km, "Side of the square region in km");
  cdf->add_option("--start-km", args.start_km, "Start point x y in km")->expected(2);
  cdf->add_option("--goal-km", args.goal_km, "Goal point x y in km")->expected(2);
  cdf->add_option("--out", args.out, "Output directory")->required();
  cdf->add_option("--workers", args.workers, "Worker threads");

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      emit_json(scenario_to_json(scenario_from_args(args)), args.out);
      return kExitOk;
    }
    if (feas->parsed()) {
      const Scenario s = scenario_from_args(args);
      const double snr = from_db(snr_db);
      const bool ok = is_feasible(s, snr);
      nlohmann::json doc{{"snr_target_db", snr_db}, {"feasible", ok}};
      try {
        const ConnectivityRequirement req = coverage_radius(s, snr);
        doc["coverage_radius_m"] = req.radius;
        if (!edges_file.empty()) {
          std::ofstream out(edges_file);
          if (!out) throw PlanningError(ErrorCode::Io, "cannot write " + edges_file);
          write_edge_list(out, build_feasibility_graph(s, req));
        }
      } catch (const PlanningError& e) {
        if (e.code() != ErrorCode::UnachievableSnr) throw;
        doc["coverage_radius_m"] = nullptr;
      }
      std::cout << doc.dump(2) << '\n';
      return ok ? kExitOk : kExitInfeasible;
    }
    if (maxsnr->parsed()) {
      const Scenario s = scenario_from_args(args);
      const nlohmann::json doc{{"max_snr_db", to_db(bottleneck_max_snr(s))},
                               {"max_snr_sf_db", to_db(straight_flight_max_snr(s))},
                               {"bottleneck_radius_m", bottleneck_radius(s)}};
      std::cout << doc.dump(2) << '\n';
      return kExitOk;
    }
    if (plan->parsed()) return run_plan(scenario_from_args(args), method, snr_db, q, args);
    if (sweep->parsed()) {
      const Scenario s = scenario_from_args(args);
      ExperimentConfig config = make_config(args);
      config.snr_grid_db = grid;
      config.quant_levels = sweep_config.quant_levels;
      config.exhaustive_budget = sweep_config.exhaustive_budget;
      const SweepReport report = run_time_sweep(s, config);
      write_sweep_outputs(args.out, config, s, report);
      return kExitOk;
    }
    if (cdf->parsed()) {
      ExperimentConfig config = make_config(args);
      std::vector<double> densities = args.lambdas;
      if (densities.empty()) densities = {0.1, 0.8, 1.6};
      config.density = densities.front();
      const CdfReport report = run_cdf_experiment(config, densities);
      write_cdf_outputs(args.out, config, densities, report);
      for (const CdfSummary& s : report.summaries) {
        std::cout << "lambda=" << s.density << " M=" << s.num_gbs
                  << " median_gain_db=" << s.median_gain_db << '\n';
      }
      return kExitOk;
    }
  } catch (const PlanningError& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == ErrorCode::Infeasible ? kExitInfeasible : kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
