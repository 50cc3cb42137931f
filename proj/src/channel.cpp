#include "aeroplan/channel.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "aeroplan/geometry.hpp"

namespace aeroplan {

namespace {
constexpr double kSpeedOfLight = 299792458.0;  // m/s
constexpr double kPi = 3.14159265358979323846;

// 20*log10(4*pi/c), the frequency-independent part of the Friis formula.
const double kFsplConst = 20.0 * std::log10(4.0 * kPi / kSpeedOfLight);

void append(std::vector<std::string>& out, const std::string& field,
            const std::string& why) {
  out.push_back(field + ": " + why);
}
}  // namespace

const char* to_string(PropagationGroup g) {
  return g == PropagationGroup::LoS ? "LoS" : "NLoS";
}

std::vector<std::string> validate(const EnvironmentParams& env) {
  std::vector<std::string> v;
  if (!(env.sig_a > 0.0)) append(v, "sig_a", "must be > 0");
  if (!(env.sig_b > 0.0)) append(v, "sig_b", "must be > 0");
  if (!(env.eta_los_mean_db >= 0.0))
    append(v, "eta_los_mean_db", "must be >= 0");
  if (!(env.eta_nlos_mean_db >= env.eta_los_mean_db))
    append(v, "eta_nlos_mean_db", "must be >= eta_los_mean_db");
  if (!(env.eta_los_std_db >= 0.0)) append(v, "eta_los_std_db", "must be >= 0");
  if (!(env.eta_nlos_std_db >= 0.0))
    append(v, "eta_nlos_std_db", "must be >= 0");
  return v;
}

void ensure_valid(const EnvironmentParams& env) {
  const auto v = validate(env);
  if (!v.empty()) {
    std::string msg = "invalid EnvironmentParams";
    for (const auto& item : v) msg += "; " + item;
    throw std::domain_error(msg);
  }
}

std::vector<std::string> validate(const RadioConfig& radio) {
  std::vector<std::string> v;
  if (!(radio.carrier_freq_hz > 0.0))
    append(v, "carrier_freq_hz", "must be > 0");
  if (!(radio.num_resource_elements >= 1))
    append(v, "num_resource_elements", "must be >= 1");
  if (!(radio.max_path_loss_db > 0.0))
    append(v, "max_path_loss_db", "must be > 0");
  if (!std::isfinite(radio.tx_power_dbm)) append(v, "tx_power_dbm", "must be finite");
  if (!std::isfinite(radio.tx_gain_dbi)) append(v, "tx_gain_dbi", "must be finite");
  if (!std::isfinite(radio.rx_gain_dbi)) append(v, "rx_gain_dbi", "must be finite");
  if (!std::isfinite(radio.rx_sensitivity_dbm))
    append(v, "rx_sensitivity_dbm", "must be finite");
  if (!std::isfinite(radio.max_tx_power_dbm))
    append(v, "max_tx_power_dbm", "must be finite");
  return v;
}

void ensure_valid(const RadioConfig& radio) {
  const auto v = validate(radio);
  if (!v.empty()) {
    std::string msg = "invalid RadioConfig";
    for (const auto& item : v) msg += "; " + item;
    throw std::domain_error(msg);
  }
}

double fspl_db(double distance_m, double freq_hz) {
  if (!(freq_hz > 0.0)) throw std::domain_error("freq_hz must be > 0");
  const double d = distance_m < 1.0 ? 1.0 : distance_m;
  return 20.0 * std::log10(d) + 20.0 * std::log10(freq_hz) + kFsplConst;
}

double p_los(double elevation_deg, const EnvironmentParams& env) {
  if (!(elevation_deg >= 0.0 && elevation_deg <= 90.0)) {
    throw std::domain_error("elevation_deg must be in [0, 90]");
  }
  return 1.0 /
         (1.0 + env.sig_a * std::exp(-env.sig_b * (elevation_deg - env.sig_a)));
}

double mean_excess_db(double elevation_deg, const EnvironmentParams& env) {
  const double p = p_los(elevation_deg, env);
  return p * env.eta_los_mean_db + (1.0 - p) * env.eta_nlos_mean_db;
}

PathLossBreakdown mean_path_loss_db(double altitude_m, double ground_range_m,
                                    const RadioConfig& radio,
                                    const EnvironmentParams& env) {
  const LinkGeometry g = make_link_geometry(altitude_m, ground_range_m);
  PathLossBreakdown b;
  b.fspl_db = fspl_db(g.slant_range_m, radio.carrier_freq_hz);
  b.p_los = p_los(g.elevation_deg, env);
  b.excess_mean_db = b.p_los * env.eta_los_mean_db +
                     (1.0 - b.p_los) * env.eta_nlos_mean_db;
  b.total_mean_db = b.fspl_db + b.excess_mean_db;
  return b;
}

std::pair<double, PropagationGroup> sample_path_loss_db(
    double altitude_m, double ground_range_m, const RadioConfig& radio,
    const EnvironmentParams& env, SplitMix64& rng, bool clamp_at_fspl) {
  const LinkGeometry g = make_link_geometry(altitude_m, ground_range_m);
  const double fspl = fspl_db(g.slant_range_m, radio.carrier_freq_hz);
  const double p = p_los(g.elevation_deg, env);

  const PropagationGroup group =
      rng.next_double() < p ? PropagationGroup::LoS : PropagationGroup::NLoS;
  const double mean = group == PropagationGroup::LoS ? env.eta_los_mean_db
                                                     : env.eta_nlos_mean_db;
  const double std = group == PropagationGroup::LoS ? env.eta_los_std_db
                                                    : env.eta_nlos_std_db;
  double loss = fspl + mean + std * rng.next_normal();
  if (clamp_at_fspl && loss < fspl) loss = fspl;
  return {loss, group};
}

double terrestrial_path_loss_db(double distance_m, double alpha,
                                double freq_hz) {
  if (!(alpha >= 2.0)) throw std::domain_error("alpha must be >= 2");
  const double d = distance_m < 1.0 ? 1.0 : distance_m;
  return fspl_db(1.0, freq_hz) + 10.0 * alpha * std::log10(d);
}

double rsrp_dbm(const RadioConfig& radio, double path_loss_db) {
  return radio.tx_power_dbm -
         10.0 * std::log10(static_cast<double>(radio.num_resource_elements)) +
         radio.tx_gain_dbi + radio.rx_gain_dbi - path_loss_db;
}

namespace {
EnvironmentParams env_from_json(const nlohmann::json& j,
                                const std::string& origin) {
  static const char* kKeys[] = {"sig_a",           "sig_b",
                                "eta_los_mean_db", "eta_nlos_mean_db",
                                "eta_los_std_db",  "eta_nlos_std_db"};
  if (!j.is_object()) {
    throw std::runtime_error(origin + ": environment must be a JSON object");
  }
  EnvironmentParams env;
  env.name = j.value("name", "");
  for (const char* key : kKeys) {
    if (!j.contains(key) || !j[key].is_number()) {
      throw std::runtime_error(origin + ": missing or non-numeric field '" +
                               key + "'");
    }
  }
  env.sig_a = j["sig_a"].get<double>();
  env.sig_b = j["sig_b"].get<double>();
  env.eta_los_mean_db = j["eta_los_mean_db"].get<double>();
  env.eta_nlos_mean_db = j["eta_nlos_mean_db"].get<double>();
  env.eta_los_std_db = j["eta_los_std_db"].get<double>();
  env.eta_nlos_std_db = j["eta_nlos_std_db"].get<double>();
  const auto violations = validate(env);
  if (!violations.empty()) {
    std::string msg = origin + ": invalid environment";
    for (const auto& v : violations) msg += "; " + v;
    throw std::runtime_error(msg);
  }
  return env;
}
}  // namespace

EnvironmentParams parse_environment_json(const std::string& text,
                                         const std::string& origin) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::runtime_error(origin + ": JSON parse error: " + e.what());
  }
  return env_from_json(j, origin);
}

EnvironmentParams load_environment_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open environment file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_environment_json(ss.str(), path);
}

}  // namespace aeroplan
