#include "skylink/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "skylink/baselines.hpp"
#include "skylink/conn_graph.hpp"
#include "skylink/errors.hpp"
#include "skylink/method1.hpp"
#include "skylink/method2.hpp"
#include "skylink/parallel.hpp"
#include "skylink/scenario_io.hpp"

namespace skylink {

namespace {

constexpr int kCsvVersion = 1;

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw PlanningError(ErrorCode::Io, "cannot write " + path.string());
  return out;
}

std::string provenance_line(const char* table, const ExperimentConfig& config) {
  std::ostringstream line;
  line << "# skylink " << table << " v" << kCsvVersion << "; seed=" << config.base_seed
       << "; rng=" << kRngAlgorithm;
  return line.str();
}

}  // namespace

std::size_t ExperimentConfig::gbs_count() const {
  if (num_gbs > 0) return num_gbs;
  return static_cast<std::size_t>(std::llround(density * region_km * region_km));
}

void ExperimentConfig::validate() const {
  if (!(region_km > 0.0)) throw PlanningError(ErrorCode::InvalidArgument, "region must be positive");
  if (trials < 1) throw PlanningError(ErrorCode::InvalidArgument, "need at least one trial");
  if (gbs_count() < 1) {
    throw PlanningError(ErrorCode::InvalidArgument, "density and region give no GBS");
  }
  if (!(grid_step_db > 0.0)) throw PlanningError(ErrorCode::InvalidArgument, "grid step must be positive");
  for (std::size_t q : quant_levels) {
    if (q < 2) throw PlanningError(ErrorCode::InvalidQuantLevels, "quantization levels must be >= 2");
  }
}

nlohmann::json config_to_json(const ExperimentConfig& c) {
  return nlohmann::json{{"region_km", c.region_km},
                        {"density_per_km2", c.density},
                        {"num_gbs", c.gbs_count()},
                        {"start", {c.start.x, c.start.y}},
                        {"goal", {c.goal.x, c.goal.y}},
                        {"trials", c.trials},
                        {"base_seed", c.base_seed},
                        {"uav_altitude_m", c.uav_altitude},
                        {"gbs_altitude_m", c.gbs_altitude},
                        {"max_speed_mps", c.max_speed},
                        {"ref_snr_db", c.ref_snr_db},
                        {"snr_grid_db", c.snr_grid_db},
                        {"grid_step_db", c.grid_step_db},
                        {"grid_below_sf_db", c.grid_below_sf_db},
                        {"quant_levels", c.quant_levels},
                        {"exhaustive_budget", c.exhaustive_budget},
                        {"rng", kRngAlgorithm},
                        {"csv_version", kCsvVersion}};
}

std::mt19937_64 trial_rng(std::uint64_t base_seed, std::size_t trial_index, std::size_t num_gbs) {
  const auto trial = static_cast<std::uint64_t>(trial_index);
  std::seed_seq seq{static_cast<std::uint32_t>(base_seed), static_cast<std::uint32_t>(base_seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(num_gbs)};
  return std::mt19937_64(seq);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Scenario generate_scenario(const ExperimentConfig& config, std::size_t trial_index) {
  const std::size_t m_count = config.gbs_count();
  std::mt19937_64 rng = trial_rng(config.base_seed, trial_index, m_count);
  const double side = config.region_km * 1000.0;
  Scenario s;
  s.gbs.reserve(m_count);
  for (std::size_t m = 0; m < m_count; ++m) {
    const double x = side * uniform01(rng);
    const double y = side * uniform01(rng);
    s.gbs.push_back({x, y});
  }
  s.start = config.start;
  s.goal = config.goal;
  s.uav_altitude = config.uav_altitude;
  s.gbs_altitude = config.gbs_altitude;
  s.max_speed = config.max_speed;
  s.ref_snr = from_db(config.ref_snr_db);
  return s;
}

double median(std::vector<double> values) {
  if (values.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

CdfReport run_cdf_experiment(const ExperimentConfig& config, const std::vector<double>& densities) {
  config.validate();
  CdfReport report;
  for (double density : densities) {
    ExperimentConfig cfg = config;
    cfg.density = density;
    cfg.num_gbs = 0;
    cfg.validate();
    std::vector<CdfRecord> records(cfg.trials);
    parallel_for(cfg.trials, cfg.workers, [&](std::size_t trial) {
      const Scenario s = generate_scenario(cfg, trial);
      records[trial] = {density, trial, s.num_gbs(), bottleneck_max_snr(s),
                        straight_flight_max_snr(s)};
    });
    std::vector<double> best_db, sf_db;
    for (const CdfRecord& r : records) {
      best_db.push_back(to_db(r.max_snr));
      sf_db.push_back(to_db(r.max_snr_sf));
    }
    CdfSummary summary;
    summary.density = density;
    summary.num_gbs = cfg.gbs_count();
    summary.median_max_snr_db = median(best_db);
    summary.median_max_snr_sf_db = median(sf_db);
    summary.median_gain_db = summary.median_max_snr_db - summary.median_max_snr_sf_db;
    report.summaries.push_back(summary);
    report.records.insert(report.records.end(), records.begin(), records.end());
  }
  return report;
}

std::vector<double> default_snr_grid(const Scenario& scenario, const ExperimentConfig& config) {
  const double top_db = to_db(bottleneck_max_snr(scenario));
  const double first_db = to_db(straight_flight_max_snr(scenario)) - config.grid_below_sf_db;
  std::vector<double> grid;
  for (std::size_t k = 0;; ++k) {
    const double db = first_db + static_cast<double>(k) * config.grid_step_db;
    if (db > top_db) break;
    grid.push_back(db);
  }
  return grid;
}

namespace {

SweepRow sweep_row(double snr_db, std::string method, const auto& make_plan_fn) {
  SweepRow row;
  row.snr_db = snr_db;
  row.method = std::move(method);
  try {
    const Plan plan = make_plan_fn();
    row.status = to_string(plan.status);
    row.completion_time = plan.completion_time;
    row.length = plan.length;
    row.sequence = plan.sequence.indices;
  } catch (const PlanningError& e) {
    if (e.code() != ErrorCode::Infeasible && e.code() != ErrorCode::UnachievableSnr) throw;
    row.status = "infeasible";
  }
  return row;
}

}  // namespace

SweepReport run_time_sweep(const Scenario& scenario, const ExperimentConfig& config) {
  config.validate();
  SweepReport report;
  report.max_snr = bottleneck_max_snr(scenario);
  report.max_snr_sf = straight_flight_max_snr(scenario);
  report.grid_db = config.snr_grid_db.empty() ? default_snr_grid(scenario, config) : config.snr_grid_db;

  std::vector<std::vector<SweepRow>> per_point(report.grid_db.size());
  parallel_for(report.grid_db.size(), config.workers, [&](std::size_t k) {
    const double db = report.grid_db[k];
    const double snr = from_db(db);
    auto& rows = per_point[k];
    rows.push_back(sweep_row(db, "sf", [&] { return plan_straight_flight(scenario, snr); }));
    rows.push_back(sweep_row(db, "m1", [&] { return plan_method1(scenario, snr); }));
    for (std::size_t q : config.quant_levels) {
      rows.push_back(sweep_row(db, "m2-Q" + std::to_string(q),
                               [&] { return plan_method2(scenario, snr, q); }));
    }
    if (config.exhaustive_budget > 0) {
      std::size_t paths = 0;
      bool feasible = true;
      try {
        paths = count_simple_paths(scenario, snr, config.exhaustive_budget + 1);
      } catch (const PlanningError& e) {
        if (e.code() != ErrorCode::UnachievableSnr) throw;
        feasible = false;
      }
      if (feasible && paths > config.exhaustive_budget) {
        rows.push_back({db, "exhaustive", "skipped", 0.0, 0.0, {}});
      } else {
        ExhaustiveOptions opts;
        opts.path_budget = config.exhaustive_budget;
        rows.push_back(sweep_row(db, "exhaustive", [&] { return exhaustive_plan(scenario, snr, opts); }));
      }
    }
  });
  for (auto& rows : per_point) {
    report.rows.insert(report.rows.end(), std::make_move_iterator(rows.begin()),
                       std::make_move_iterator(rows.end()));
  }
  return report;
}

void write_cdf_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                       const std::vector<double>& densities, const CdfReport& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out = open_output(dir / "cdf_trials.csv");
    out << provenance_line("cdf_trials", config) << '\n';
    out << "density_per_km2,trial,num_gbs,max_snr_db,max_snr_sf_db\n";
    for (const CdfRecord& r : report.records) {
      out << format_double(r.density) << ',' << r.trial << ',' << r.num_gbs << ','
          << format_double(to_db(r.max_snr)) << ',' << format_double(to_db(r.max_snr_sf)) << '\n';
    }
  }
  {
    std::ofstream out = open_output(dir / "cdf_curves.csv");
    out << provenance_line("cdf_curves", config) << '\n';
    out << "density_per_km2,trajectory,snr_db,cdf\n";
    for (double density : densities) {
      for (const char* which : {"proposed", "sf"}) {
        std::vector<double> values;
        for (const CdfRecord& r : report.records) {
          if (r.density != density) continue;
          values.push_back(to_db(which[0] == 'p' ? r.max_snr : r.max_snr_sf));
        }
        std::sort(values.begin(), values.end());
        for (std::size_t k = 0; k < values.size(); ++k) {
          const double cdf = static_cast<double>(k + 1) / static_cast<double>(values.size());
          out << format_double(density) << ',' << which << ',' << format_double(values[k]) << ','
              << format_double(cdf) << '\n';
        }
      }
    }
  }
  {
    std::ofstream out = open_output(dir / "cdf_summary.csv");
    out << provenance_line("cdf_summary", config) << '\n';
    out << "density_per_km2,num_gbs,median_max_snr_db,median_max_snr_sf_db,median_gain_db\n";
    for (const CdfSummary& s : report.summaries) {
      out << format_double(s.density) << ',' << s.num_gbs << ','
          << format_double(s.median_max_snr_db) << ',' << format_double(s.median_max_snr_sf_db)
          << ',' << format_double(s.median_gain_db) << '\n';
    }
  }
  nlohmann::json meta = config_to_json(config);
  meta["densities_per_km2"] = densities;
  std::ofstream out = open_output(dir / "cdf_config.json");
  out << meta.dump(2) << '\n';
}

void write_sweep_outputs(const std::filesystem::path& dir, const ExperimentConfig& config,
                         const Scenario& scenario, const SweepReport& report) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream out = open_output(dir / "sweep.csv");
    out << provenance_line("sweep", config) << '\n';
    out << "snr_db,method,status,completion_time_s,length_m,sequence\n";
    for (const SweepRow& r : report.rows) {
      out << format_double(r.snr_db) << ',' << r.method << ',' << r.status << ','
          << format_double(r.completion_time) << ',' << format_double(r.length) << ',';
      for (std::size_t i = 0; i < r.sequence.size(); ++i) out << (i ? " " : "") << r.sequence[i];
      out << '\n';
    }
  }
  nlohmann::json meta = config_to_json(config);
  meta["scenario"] = scenario_to_json(scenario);
  meta["max_snr_db"] = to_db(report.max_snr);
  meta["max_snr_sf_db"] = to_db(report.max_snr_sf);
  meta["grid_db"] = report.grid_db;
  std::ofstream out = open_output(dir / "sweep_config.json");
  out << meta.dump(2) << '\n';
}

}  // namespace skylink
