#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "skylink/scenario.hpp"

namespace skylink {

// Identity of the random stream, recorded in every output for provenance.
inline constexpr const char* kRngAlgorithm =
    "mt19937_64 seeded by seed_seq{seed_lo, seed_hi, trial_lo, trial_hi, M}; "
    "uniform = (bits >> 11) * 2^-53";

struct ExperimentConfig {
  double region_km = 10.0;           // D
  double density = 0.25;             // lambda, GBS per km^2
  std::size_t num_gbs = 0;           // explicit M; 0 means round(lambda * D^2)
  Point start{2000.0, 2000.0};
  Point goal{8000.0, 8000.0};
  std::size_t trials = 1000;
  std::uint64_t base_seed = 1;
  double uav_altitude = 90.0;
  double gbs_altitude = 12.5;
  double max_speed = 50.0;
  double ref_snr_db = 80.0;

  std::vector<double> snr_grid_db;   // empty: default grid
  double grid_step_db = 0.25;
  double grid_below_sf_db = 5.0;     // default grid starts this far below the SF limit
  std::vector<std::size_t> quant_levels{8, 16};
  std::size_t exhaustive_budget = 20000;  // 0 disables the exhaustive column
  std::size_t workers = 1;

  std::size_t gbs_count() const;
  void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig& config);

// Independent random stream per (seed, trial, M).
std::mt19937_64 trial_rng(std::uint64_t base_seed, std::size_t trial_index, std::size_t num_gbs);
double uniform01(std::mt19937_64& rng);

// GBS positions i.i.d. uniform over [0, D km]^2; everything else from config.
Scenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index);

struct CdfRecord {
  double density = 0.0;
  std::size_t trial = 0;
  std::size_t num_gbs = 0;
  double max_snr = 0.0;     // linear, over all trajectories
  double max_snr_sf = 0.0;  // linear, straight flight
};

struct CdfSummary {
  double density = 0.0;
  std::size_t num_gbs = 0;
  double median_max_snr_db = 0.0;
  double median_max_snr_sf_db = 0.0;
  double median_gain_db = 0.0;  // difference of the two medians
};

struct CdfReport {
  std::vector<CdfRecord> records;
  std::vector<CdfSummary> summaries;
};

// Median of a sample (mean of the two middle values for even sizes).
double median(std::vector<double> values);

// For each density: `config.trials` scenarios, each evaluated for the
// bottleneck and straight-flight SNR limits.
CdfReport run_cdf_experiment(const ExperimentConfig& config, const std::vector<double>& densities);

struct SweepRow {
  double snr_db = 0.0;
  std::string method;
  std::string status;  // ok | infeasible | non_convergence | budget_exhausted | skipped
  double completion_time = 0.0;
  double length = 0.0;
  std::vector<std::size_t> sequence;
};

struct SweepReport {
  double max_snr = 0.0;
  double max_snr_sf = 0.0;
  std::vector<double> grid_db;
  std::vector<SweepRow> rows;
};

// grid_step_db spacing from (SF limit - grid_below_sf_db) up to the
// bottleneck limit.
std::vector<double> default_snr_grid(const Scenario& scenario, const ExperimentConfig& config);

// Completion time versus SNR target for SF, Method I, Method II per Q and the
// exhaustive oracle (skipped when the path count exceeds the budget).
SweepReport run_time_sweep(const Scenario& scenario, const ExperimentConfig& config);

void write_cdf_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                       const std::vector<double>& densities, const CdfReport& report);
void write_sweep_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                         const Scenario& scenario, const SweepReport& report);

}  // namespace skylink
