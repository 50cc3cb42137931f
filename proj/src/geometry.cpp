#include "aeroplan/geometry.hpp"

#include <stdexcept>

namespace aeroplan {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_altitude(double altitude_m) {
  if (!(altitude_m > 0.0)) {
    throw std::domain_error("altitude_m must be > 0");
  }
}

void check_range(double ground_range_m) {
  if (!(ground_range_m >= 0.0)) {
    throw std::domain_error("ground_range_m must be >= 0");
  }
}
}  // namespace

double elevation_angle_deg(double altitude_m, double ground_range_m) {
  check_altitude(altitude_m);
  check_range(ground_range_m);
  // atan2 hits pi/2 exactly at range 0, so the zenith case needs no branch.
  return std::atan2(altitude_m, ground_range_m) * (180.0 / kPi);
}

double slant_range_m(double altitude_m, double ground_range_m) {
  check_altitude(altitude_m);
  check_range(ground_range_m);
  return std::hypot(altitude_m, ground_range_m);
}

LinkGeometry make_link_geometry(double altitude_m, double ground_range_m) {
  LinkGeometry g;
  g.altitude_m = altitude_m;
  g.ground_range_m = ground_range_m;
  g.elevation_deg = elevation_angle_deg(altitude_m, ground_range_m);
  g.slant_range_m = slant_range_m(altitude_m, ground_range_m);
  return g;
}

LinkGeometry link_geometry_from_angle(double elevation_deg,
                                      double slant_range_m) {
  if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) {
    throw std::domain_error("elevation_deg must be in [0, 90]");
  }
  if (!(slant_range_m > 0.0)) {
    throw std::domain_error("slant_range_m must be > 0");
  }
  const double rad = elevation_deg * (kPi / 180.0);
  LinkGeometry g;
  g.elevation_deg = elevation_deg;
  g.slant_range_m = slant_range_m;
  g.altitude_m = slant_range_m * std::sin(rad);
  g.ground_range_m = slant_range_m * std::cos(rad);
  if (elevation_deg == 90.0) g.ground_range_m = 0.0;
  return g;
}

}  // namespace aeroplan
