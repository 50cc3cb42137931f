#include "aeroplan/planner.hpp"

#include <cmath>
#include <stdexcept>

namespace aeroplan {

namespace {

double mean_total_db(double altitude_m, double ground_range_m,
                     const RadioConfig& radio, const EnvironmentParams& env) {
  return mean_path_loss_db(altitude_m, ground_range_m, radio, env)
      .total_mean_db;
}

// Any range beyond 10^((PL_max - fspl(1m))/20) is out of budget on free
// space alone, since the slant range exceeds the ground range.
double range_upper_bound_m(const RadioConfig& radio) {
  const double k0 = fspl_db(1.0, radio.carrier_freq_hz);
  double r = std::pow(10.0, (radio.max_path_loss_db - k0) / 20.0);
  return r < 1.0 ? 1.0 : r;
}

}  // namespace

CoverageResult coverage_radius_m(double altitude_m, const RadioConfig& radio,
                                 const EnvironmentParams& env, double tol_m) {
  if (!(altitude_m > 0.0)) throw std::domain_error("altitude_m must be > 0");
  if (!(tol_m > 0.0)) throw std::domain_error("tol_m must be > 0");
  ensure_valid(radio);
  ensure_valid(env);

  const double pl_max = radio.max_path_loss_db;
  const double loss_zenith = mean_total_db(altitude_m, 0.0, radio, env);
  if (loss_zenith > pl_max) {
    return {0.0, loss_zenith, false};
  }

  double r_hi = range_upper_bound_m(radio);
  for (int i = 0; i < 60 && mean_total_db(altitude_m, r_hi, radio, env) <= pl_max;
       ++i) {
    r_hi *= 2.0;
  }

  // Probe a coarse bracket for monotonicity before trusting bisection.
  constexpr int kProbes = 64;
  bool monotone = true;
  double prev = loss_zenith;
  for (int i = 1; i <= kProbes; ++i) {
    const double v =
        mean_total_db(altitude_m, r_hi * i / kProbes, radio, env);
    if (v < prev - 1e-12) {
      monotone = false;
      break;
    }
    prev = v;
  }

  double radius = 0.0;
  if (monotone) {
    double lo = 0.0;
    double hi = r_hi;
    while (hi - lo > tol_m) {
      const double mid = 0.5 * (lo + hi);
      if (mean_total_db(altitude_m, mid, radio, env) <= pl_max) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    radius = lo;
  } else {
    // Exhaustive fine scan: keep the largest in-budget range.
    for (double r = 0.0; r <= r_hi; r += tol_m) {
      if (mean_total_db(altitude_m, r, radio, env) <= pl_max) radius = r;
    }
  }
  return {radius, mean_total_db(altitude_m, radius, radio, env), true};
}

AltitudeSolution optimal_altitude(const RadioConfig& radio,
                                  const EnvironmentParams& env, double h_min,
                                  double h_max, double tol_m) {
  if (!(h_min > 0.0)) throw std::domain_error("h_min must be > 0");
  if (!(h_max >= h_min)) throw std::domain_error("h_max must be >= h_min");
  if (!(tol_m > 0.0)) throw std::domain_error("tol_m must be > 0");

  AltitudeSolution sol;
  std::vector<char> feasibles;
  auto eval = [&](double h) {
    const CoverageResult c = coverage_radius_m(h, radio, env, tol_m);
    sol.search_trace.push_back({h, c.radius_m});
    feasibles.push_back(c.feasible ? 1 : 0);
    return c.radius_m;
  };

  if (h_min == h_max) {
    eval(h_min);
  } else {
    constexpr int kGrid = 200;
    const double log_lo = std::log(h_min);
    const double log_hi = std::log(h_max);
    int best = 0;
    double best_r = -1.0;
    for (int i = 0; i < kGrid; ++i) {
      double h = std::exp(log_lo + (log_hi - log_lo) * i / (kGrid - 1));
      if (i == 0) h = h_min;
      if (i == kGrid - 1) h = h_max;
      const double r = eval(h);
      if (r > best_r) {
        best_r = r;
        best = i;
      }
    }

    // Golden-section refinement inside the bracket around the grid argmax.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = sol.search_trace[best > 0 ? best - 1 : 0].altitude_m;
    double hi = sol.search_trace[best < kGrid - 1 ? best + 1 : kGrid - 1]
                    .altitude_m;
    double c = hi - (hi - lo) * inv_phi;
    double d = lo + (hi - lo) * inv_phi;
    double fc = eval(c);
    double fd = eval(d);
    for (int it = 0; it < 200 && hi - lo > tol_m; ++it) {
      if (fc >= fd) {  // keep the lower half on ties
        hi = d;
        d = c;
        fd = fc;
        c = hi - (hi - lo) * inv_phi;
        fc = eval(c);
      } else {
        lo = c;
        c = d;
        fc = fd;
        d = lo + (hi - lo) * inv_phi;
        fd = eval(d);
      }
    }
  }

  // Winner over everything evaluated: largest radius, then feasibility,
  // then the lower altitude.
  std::size_t win = 0;
  for (std::size_t i = 1; i < sol.search_trace.size(); ++i) {
    const auto& a = sol.search_trace[i];
    const auto& b = sol.search_trace[win];
    const bool better =
        a.radius_m > b.radius_m ||
        (a.radius_m == b.radius_m &&
         (feasibles[i] > feasibles[win] ||
          (feasibles[i] == feasibles[win] && a.altitude_m < b.altitude_m)));
    if (better) win = i;
  }
  sol.altitude_m = sol.search_trace[win].altitude_m;
  sol.radius_m = sol.search_trace[win].radius_m;
  sol.feasible = feasibles[win] != 0;
  return sol;
}

}  // namespace aeroplan
