#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aeroplan/rng.hpp"

namespace aeroplan {

// LoS / NLoS propagation condition of a terminal relative to the platform.
enum class PropagationGroup { LoS, NLoS };

const char* to_string(PropagationGroup g);

// Per-environment parameters of the air-to-ground model: the logistic
// LoS-occurrence curve 1/(1 + sig_a * exp(-sig_b * (theta_deg - sig_a)))
// and the per-group Gaussian excess-loss statistics in dB. Shipped
// presets live in presets/*.json and are editable configuration, not
// normative values.
struct EnvironmentParams {
  std::string name;
  double sig_a = 0.0;            // dimensionless, > 0
  double sig_b = 0.0;            // per degree, > 0
  double eta_los_mean_db = 0.0;  // >= 0
  double eta_nlos_mean_db = 0.0; // >= eta_los_mean_db
  double eta_los_std_db = 0.0;   // >= 0
  double eta_nlos_std_db = 0.0;  // >= 0
};

// Returns violation messages ("sig_a: must be > 0"), empty when valid.
std::vector<std::string> validate(const EnvironmentParams& env);
void ensure_valid(const EnvironmentParams& env);

// Radio link budget configuration shared by downlink (RSRP) and uplink
// (required transmit power) calculations.
struct RadioConfig {
  double carrier_freq_hz = 2.6e9;
  double tx_power_dbm = 23.0;
  double tx_gain_dbi = 0.0;
  double rx_gain_dbi = 0.0;
  int num_resource_elements = 300;  // 25 RB x 12 subcarriers
  double rx_sensitivity_dbm = -100.0;
  double max_tx_power_dbm = 23.0;
  double max_path_loss_db = 110.0;
};

std::vector<std::string> validate(const RadioConfig& radio);
void ensure_valid(const RadioConfig& radio);

// Decomposition of the mean A2G loss: total = fspl + p*eta_los + (1-p)*eta_nlos.
struct PathLossBreakdown {
  double fspl_db = 0.0;
  double p_los = 0.0;
  double excess_mean_db = 0.0;
  double total_mean_db = 0.0;
};

// Friis free-space loss, 20log10(d) + 20log10(f) + 20log10(4pi/c).
// Distances below 1 m clamp to 1 m (near-field guard).
double fspl_db(double distance_m, double freq_hz);

// LoS group occurrence probability at elevation angle theta in degrees.
double p_los(double elevation_deg, const EnvironmentParams& env);

// Probability-weighted mean excess loss; lies in [eta_los, eta_nlos].
double mean_excess_db(double elevation_deg, const EnvironmentParams& env);

PathLossBreakdown mean_path_loss_db(double altitude_m, double ground_range_m,
                                    const RadioConfig& radio,
                                    const EnvironmentParams& env);

// One stochastic draw: group ~ Bernoulli(p_los), then excess ~
// Normal(mean, std) of that group. Not clamped by default; a sample may
// land below the free-space loss. Consumes exactly three generator
// steps (one uniform for the group, two for the normal).
std::pair<double, PropagationGroup> sample_path_loss_db(
    double altitude_m, double ground_range_m, const RadioConfig& radio,
    const EnvironmentParams& env, SplitMix64& rng, bool clamp_at_fspl = false);

// Ground-to-ground log-distance loss: fspl(1 m, f) + 10*alpha*log10(d),
// d clamped at 1 m. Requires alpha >= 2.
double terrestrial_path_loss_db(double distance_m, double alpha,
                                double freq_hz);

// Per-resource-element received power:
// tx - 10log10(N_RE) + gains - path_loss.
double rsrp_dbm(const RadioConfig& radio, double path_loss_db);

inline double dbm_to_watts(double dbm) {
  return std::pow(10.0, (dbm - 30.0) / 10.0);
}

// Environment preset JSON: object with keys name, sig_a, sig_b,
// eta_los_mean_db, eta_nlos_mean_db, eta_los_std_db, eta_nlos_std_db.
EnvironmentParams load_environment_json(const std::string& path);
EnvironmentParams parse_environment_json(const std::string& text,
                                         const std::string& origin);

}  // namespace aeroplan
