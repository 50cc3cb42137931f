#pragma once

#include <vector>

#include "aeroplan/channel.hpp"

namespace aeroplan {

struct CoverageResult {
  double radius_m = 0.0;
  double limiting_path_loss_db = 0.0;  // mean loss at the returned radius
  bool feasible = false;  // false when even the sub-platform point exceeds PL_max
};

struct AltitudePoint {
  double altitude_m = 0.0;
  double radius_m = 0.0;
};

struct AltitudeSolution {
  double altitude_m = 0.0;
  double radius_m = 0.0;
  bool feasible = false;  // false when no altitude in the bracket covers anything
  std::vector<AltitudePoint> search_trace;  // every (altitude, radius) evaluated
};

// Largest ground range whose mean A2G loss stays within
// radio.max_path_loss_db, found to within tol_m. The mean loss is
// checked for monotonicity in range on a coarse bracket first; if
// monotone the crossing is bisected, otherwise the bracket is scanned
// exhaustively at tol_m steps.
CoverageResult coverage_radius_m(double altitude_m, const RadioConfig& radio,
                                 const EnvironmentParams& env, double tol_m);

// Altitude maximizing the coverage radius over [h_min, h_max]: a
// 200-point log-spaced grid followed by golden-section refinement of
// the best bracket. Ties break toward the lower altitude. The returned
// radius dominates every traced altitude by construction.
AltitudeSolution optimal_altitude(const RadioConfig& radio,
                                  const EnvironmentParams& env, double h_min,
                                  double h_max, double tol_m = 0.5);

}  // namespace aeroplan
