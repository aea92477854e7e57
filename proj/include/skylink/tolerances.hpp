#pragma once

// Numerical tolerances used across the planners. Kept in one place so the
// tests and the planners agree on what "feasible" means.
namespace skylink::tol {

// Absolute slack on distance constraints (meters).
inline constexpr double kDistance = 1e-6;

// Relative slack for points that are on a coverage circle by construction.
inline constexpr double kOnCircleRelative = 1e-9;

// Relative slack on the sampled SNR during trajectory validation.
inline constexpr double kSnrRelative = 1e-6;

// Relative slack on the speed limit during trajectory validation.
inline constexpr double kSpeedRelative = 1e-9;

// Endpoint mismatch allowed during trajectory validation (meters).
inline constexpr double kEndpoint = 1e-6;

// Lenses thinner than this fraction of the radius are treated as a single
// tangency point by the handover refinement.
inline constexpr double kTangentLensRelative = 1e-9;

// Default optimality tolerance of the handover refinement (meters).
inline constexpr double kRefineDefault = 1e-3;

// Optimality tolerance used by the exhaustive oracle (meters).
inline constexpr double kRefineOracle = 1e-6;

}  // namespace skylink::tol
