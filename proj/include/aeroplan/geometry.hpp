#pragma once

#include <cmath>

namespace aeroplan {

// Planar coordinates in a local tangent frame, meters. Flat-earth
// geometry throughout; altitudes of a few km and ranges of tens of km
// keep curvature error negligible.
struct PlanarPoint {
  double x_m = 0.0;
  double y_m = 0.0;
};

inline double planar_distance_m(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

// Platform-to-terminal link geometry. Angles are in degrees at every
// public boundary; radians appear only inside implementations.
struct LinkGeometry {
  double altitude_m = 0.0;
  double ground_range_m = 0.0;
  double elevation_deg = 0.0;  // derived, in [0, 90]
  double slant_range_m = 0.0;  // derived, hypot(altitude, range)
};

// Elevation angle at which the platform is seen from the terminal.
// Exactly 90 when the terminal is at the sub-platform point.
double elevation_angle_deg(double altitude_m, double ground_range_m);

double slant_range_m(double altitude_m, double ground_range_m);

LinkGeometry make_link_geometry(double altitude_m, double ground_range_m);

// Inverse construction from (elevation, slant range); round-trips with
// make_link_geometry within 1e-9 relative.
LinkGeometry link_geometry_from_angle(double elevation_deg,
                                      double slant_range_m);

}  // namespace aeroplan
