#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace skylink {

// Horizontal position in meters.
struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend Point operator*(Point a, double s) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm_sq(Point a) { return dot(a, a); }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return norm(a - b); }
inline double distance_sq(Point a, Point b) { return norm_sq(a - b); }

// Static world description. All SNR values are linear ratios; decibels only
// appear at the I/O boundary.
struct Scenario {
  std::vector<Point> gbs;
  Point start;
  Point goal;
  double uav_altitude = 90.0;    // H
  double gbs_altitude = 12.5;    // H_G
  double max_speed = 50.0;       // V_max, m/s
  double ref_snr = 1e8;          // gamma_0

  std::size_t num_gbs() const { return gbs.size(); }
  double altitude_gap_sq() const {
    const double h = uav_altitude - gbs_altitude;
    return h * h;
  }

  // Throws PlanningError(InvalidArgument) on non-finite coordinates, an empty
  // GBS list, or non-positive speed / reference SNR.
  void validate() const;
};

struct ConnectivityRequirement {
  double snr_target = 0.0;  // linear
  double radius = 0.0;      // meters
};

double to_db(double linear);
double from_db(double db);

// Horizontal coverage radius for an SNR target. Throws UnachievableSnr when the
// target cannot be met even directly above a GBS.
ConnectivityRequirement coverage_radius(const Scenario& scenario, double snr_target);

// Inverse of coverage_radius: the SNR target whose coverage radius is `radius`.
double snr_for_radius(const Scenario& scenario, double radius);

// Received SNR with the closest GBS serving.
double snr_at(const Scenario& scenario, Point position);

// Index of the closest GBS; ties go to the lowest index.
std::size_t closest_gbs(const Scenario& scenario, Point position);

}  // namespace skylink
