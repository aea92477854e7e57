#include "skylink/scenario.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "skylink/errors.hpp"

namespace skylink {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::UnachievableSnr: return "UnachievableSnr";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::DegenerateSequence: return "DegenerateSequence";
    case ErrorCode::InvalidQuantLevels: return "InvalidQuantLevels";
    case ErrorCode::NoOverlap: return "NoOverlap";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

namespace {

bool finite(Point p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

void Scenario::validate() const {
  if (gbs.empty()) {
    throw PlanningError(ErrorCode::InvalidArgument, "scenario has no ground base stations");
  }
  for (std::size_t m = 0; m < gbs.size(); ++m) {
    if (!finite(gbs[m])) {
      throw PlanningError(ErrorCode::InvalidArgument,
                          "GBS " + std::to_string(m) + " has a non-finite coordinate");
    }
  }
  if (!finite(start) || !finite(goal)) {
    throw PlanningError(ErrorCode::InvalidArgument, "start/goal must be finite");
  }
  if (!std::isfinite(uav_altitude) || !std::isfinite(gbs_altitude)) {
    throw PlanningError(ErrorCode::InvalidArgument, "altitudes must be finite");
  }
  if (!(max_speed > 0.0) || !std::isfinite(max_speed)) {
    throw PlanningError(ErrorCode::InvalidArgument, "max_speed must be positive");
  }
  if (!(ref_snr > 0.0) || !std::isfinite(ref_snr)) {
    throw PlanningError(ErrorCode::InvalidArgument, "ref_snr must be positive");
  }
}

double to_db(double linear) { return 10.0 * std::log10(linear); }
double from_db(double db) { return std::pow(10.0, db / 10.0); }

ConnectivityRequirement coverage_radius(const Scenario& scenario, double snr_target) {
  if (!(snr_target > 0.0)) {
    throw PlanningError(ErrorCode::InvalidArgument, "SNR target must be positive");
  }
  const double h2 = scenario.altitude_gap_sq();
  double radicand = scenario.ref_snr / snr_target - h2;
  if (radicand < 0.0) {
    // Rounding at the exact boundary rho = gamma0 / h^2 must still give zero.
    if (radicand >= -1e-12 * std::max(h2, 1.0)) {
      radicand = 0.0;
    } else {
      throw PlanningError(ErrorCode::UnachievableSnr,
                          "SNR target " + std::to_string(to_db(snr_target)) +
                              " dB exceeds the SNR directly above a GBS");
    }
  }
  return {snr_target, std::sqrt(radicand)};
}

double snr_for_radius(const Scenario& scenario, double radius) {
  return scenario.ref_snr / (radius * radius + scenario.altitude_gap_sq());
}

double snr_at(const Scenario& scenario, Point position) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& g : scenario.gbs) {
    best = std::min(best, distance_sq(position, g));
  }
  return scenario.ref_snr / (scenario.altitude_gap_sq() + best);
}

std::size_t closest_gbs(const Scenario& scenario, Point position) {
  std::size_t best_index = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < scenario.gbs.size(); ++m) {
    const double d = distance_sq(position, scenario.gbs[m]);
    if (d < best) {
      best = d;
      best_index = m;
    }
  }
  return best_index;
}

}  // namespace skylink
