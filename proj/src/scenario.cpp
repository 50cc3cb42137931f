#include "aeroplan/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "aeroplan/numfmt.hpp"
#include "aeroplan/rng.hpp"

namespace aeroplan {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::vector<GroundTerminal> generate_terminals(int n, const Region& region,
                                               std::uint64_t seed) {
  if (n < 0) throw std::domain_error("terminal count must be >= 0");
  if (!(region.radius_m > 0.0)) {
    throw std::domain_error("region radius must be > 0");
  }
  SplitMix64 rng(seed);
  std::vector<GroundTerminal> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double u = rng.next_double();
    const double v = rng.next_double();
    const double r = region.radius_m * std::sqrt(u);
    const double ang = 2.0 * kPi * v;
    out.push_back({"t" + std::to_string(i),
                   {region.center.x_m + r * std::cos(ang),
                    region.center.y_m + r * std::sin(ang)}});
  }
  return out;
}

EvaluationReport evaluate_deployment(const DeploymentScenario& scenario,
                                     std::uint64_t seed) {
  EvaluationReport rep;
  SplitMix64 rng(seed);
  int covered = 0;
  double rsrp_sum = 0.0;
  for (const auto& term : scenario.terminals) {
    TerminalEvaluation row;
    row.id = term.id;
    row.ground_range_m =
        planar_distance_m(term.position, scenario.lap_position);
    row.elevation_deg =
        elevation_angle_deg(scenario.lap_altitude_m, row.ground_range_m);
    const auto [loss, group] =
        sample_path_loss_db(scenario.lap_altitude_m, row.ground_range_m,
                            scenario.radio, scenario.env, rng);
    row.sampled_pl_db = loss;
    row.group = group;
    row.rsrp_dbm = rsrp_dbm(scenario.radio, loss);
    row.covered = loss <= scenario.radio.max_path_loss_db;
    covered += row.covered ? 1 : 0;
    rsrp_sum += row.rsrp_dbm;
    rep.rows.push_back(std::move(row));
  }

  if (scenario.terminals.empty()) {
    rep.zero_terminals = true;
    rep.coverage_fraction = 1.0;  // vacuous coverage, flagged
    rep.mean_rsrp_dbm = std::numeric_limits<double>::quiet_NaN();
  } else {
    rep.coverage_fraction =
        static_cast<double>(covered) / scenario.terminals.size();
    rep.mean_rsrp_dbm = rsrp_sum / scenario.terminals.size();
  }

  const DirectEnergyResult de =
      direct_energy_j(scenario.terminals, scenario.lap_altitude_m,
                      scenario.lap_position, scenario.radio, scenario.env,
                      scenario.traffic);
  rep.direct_energy_j = de.energy_j;
  rep.outage_count = static_cast<int>(de.outage_ids.size());
  return rep;
}

MonteCarloResult run_monte_carlo_detailed(const DeploymentScenario& scenario,
                                          int runs, std::uint64_t seed,
                                          int n_threads) {
  if (runs < 1) throw std::domain_error("runs must be >= 1");
  if (n_threads < 1) n_threads = 1;

  MonteCarloResult res;
  res.per_run.resize(runs);
  auto worker = [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const EvaluationReport rep =
          evaluate_deployment(scenario, substream_seed(seed, i));
      res.per_run[i] = {rep.coverage_fraction, rep.mean_rsrp_dbm};
    }
  };

  if (n_threads == 1) {
    worker(0, runs);
  } else {
    std::vector<std::thread> pool;
    const int chunk = (runs + n_threads - 1) / n_threads;
    for (int t = 0; t < n_threads; ++t) {
      const int begin = t * chunk;
      const int end = std::min(runs, begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(worker, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  // Fixed-order fold keeps the summary bit-identical for any thread count.
  double cov_sum = 0.0;
  double rsrp_sum = 0.0;
  for (int i = 0; i < runs; ++i) {
    cov_sum += res.per_run[i].coverage_fraction;
    rsrp_sum += res.per_run[i].mean_rsrp_dbm;
  }
  const double cov_mean = cov_sum / runs;
  double var = 0.0;
  for (int i = 0; i < runs; ++i) {
    const double d = res.per_run[i].coverage_fraction - cov_mean;
    var += d * d;
  }
  var /= runs;

  MonteCarloSummary& s = res.summary;
  s.runs = runs;
  s.coverage_mean = cov_mean;
  s.coverage_std = std::sqrt(var);
  s.coverage_ci95 = 1.96 * s.coverage_std / std::sqrt(runs);
  s.rsrp_mean_dbm = rsrp_sum / runs;
  s.seed = seed;
  return res;
}

MonteCarloSummary run_monte_carlo(const DeploymentScenario& scenario, int runs,
                                  std::uint64_t seed, int n_threads) {
  return run_monte_carlo_detailed(scenario, runs, seed, n_threads).summary;
}

std::string report_csv(const EvaluationReport& report) {
  std::ostringstream os;
  os << "id,ground_range_m,elevation_deg,sampled_pl_db,group,rsrp_dbm,covered\n";
  for (const auto& r : report.rows) {
    os << r.id << ',' << format_sig6(r.ground_range_m) << ','
       << format_sig6(r.elevation_deg) << ',' << format_sig6(r.sampled_pl_db)
       << ',' << to_string(r.group) << ',' << format_sig6(r.rsrp_dbm) << ','
       << (r.covered ? '1' : '0') << '\n';
  }
  return os.str();
}

namespace {

ScenarioValidationError make_error(std::vector<std::string> v) {
  return ScenarioValidationError(std::move(v));
}

std::string join_violations(const std::vector<std::string>& v) {
  std::string msg = "scenario validation failed:";
  for (const auto& item : v) msg += "\n  " + item;
  return msg;
}

class FieldReader {
 public:
  explicit FieldReader(std::vector<std::string>& errs) : errs_(errs) {}

  const nlohmann::json* object(const nlohmann::json& parent,
                               const std::string& path) {
    if (!parent.contains(last_key(path))) {
      errs_.push_back(path + ": missing");
      return nullptr;
    }
    const auto& j = parent[last_key(path)];
    if (!j.is_object()) {
      errs_.push_back(path + ": must be an object");
      return nullptr;
    }
    return &j;
  }

  bool number(const nlohmann::json& obj, const std::string& path, double* out) {
    if (!obj.contains(last_key(path))) {
      errs_.push_back(path + ": missing");
      return false;
    }
    const auto& j = obj[last_key(path)];
    if (!j.is_number()) {
      errs_.push_back(path + ": must be a number");
      return false;
    }
    *out = j.get<double>();
    if (!std::isfinite(*out)) {
      errs_.push_back(path + ": must be finite");
      return false;
    }
    return true;
  }

  bool integer(const nlohmann::json& obj, const std::string& path,
               std::int64_t* out) {
    if (!obj.contains(last_key(path))) {
      errs_.push_back(path + ": missing");
      return false;
    }
    const auto& j = obj[last_key(path)];
    if (!j.is_number_integer()) {
      errs_.push_back(path + ": must be an integer");
      return false;
    }
    *out = j.get<std::int64_t>();
    return true;
  }

  void require(bool ok, const std::string& path, const std::string& why) {
    if (!ok) errs_.push_back(path + ": " + why);
  }

 private:
  static std::string last_key(const std::string& path) {
    const auto pos = path.rfind('.');
    return pos == std::string::npos ? path : path.substr(pos + 1);
  }

  std::vector<std::string>& errs_;
};

}  // namespace

ScenarioValidationError::ScenarioValidationError(
    std::vector<std::string> violations_)
    : std::runtime_error(join_violations(violations_)),
      violations(std::move(violations_)) {}

DeploymentScenario parse_scenario_json(const std::string& text,
                                       const std::string& origin) {
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw make_error({origin + ": JSON parse error: " + e.what()});
  }
  if (!root.is_object()) {
    throw make_error({origin + ": top level must be a JSON object"});
  }

  std::vector<std::string> errs;
  FieldReader rd(errs);
  DeploymentScenario sc;

  if (const auto* lap = rd.object(root, "lap")) {
    rd.number(*lap, "lap.x", &sc.lap_position.x_m);
    rd.number(*lap, "lap.y", &sc.lap_position.y_m);
    if (rd.number(*lap, "lap.altitude_m", &sc.lap_altitude_m)) {
      rd.require(sc.lap_altitude_m > 0.0, "lap.altitude_m", "must be > 0");
    }
  }

  if (const auto* radio = rd.object(root, "radio")) {
    rd.number(*radio, "radio.carrier_freq_hz", &sc.radio.carrier_freq_hz);
    rd.number(*radio, "radio.tx_power_dbm", &sc.radio.tx_power_dbm);
    rd.number(*radio, "radio.tx_gain_dbi", &sc.radio.tx_gain_dbi);
    rd.number(*radio, "radio.rx_gain_dbi", &sc.radio.rx_gain_dbi);
    std::int64_t nre = 0;
    if (rd.integer(*radio, "radio.num_resource_elements", &nre)) {
      sc.radio.num_resource_elements = static_cast<int>(nre);
    }
    rd.number(*radio, "radio.rx_sensitivity_dbm", &sc.radio.rx_sensitivity_dbm);
    rd.number(*radio, "radio.max_tx_power_dbm", &sc.radio.max_tx_power_dbm);
    rd.number(*radio, "radio.max_path_loss_db", &sc.radio.max_path_loss_db);
    for (const auto& v : validate(sc.radio)) errs.push_back("radio." + v);
  }

  if (const auto* env = rd.object(root, "env")) {
    if (env->contains("name") && (*env)["name"].is_string()) {
      sc.env.name = (*env)["name"].get<std::string>();
    }
    rd.number(*env, "env.sig_a", &sc.env.sig_a);
    rd.number(*env, "env.sig_b", &sc.env.sig_b);
    rd.number(*env, "env.eta_los_mean_db", &sc.env.eta_los_mean_db);
    rd.number(*env, "env.eta_nlos_mean_db", &sc.env.eta_nlos_mean_db);
    rd.number(*env, "env.eta_los_std_db", &sc.env.eta_los_std_db);
    rd.number(*env, "env.eta_nlos_std_db", &sc.env.eta_nlos_std_db);
    for (const auto& v : validate(sc.env)) errs.push_back("env." + v);
  }

  if (const auto* region = rd.object(root, "region")) {
    rd.number(*region, "region.cx", &sc.region.center.x_m);
    rd.number(*region, "region.cy", &sc.region.center.y_m);
    if (rd.number(*region, "region.radius_m", &sc.region.radius_m)) {
      rd.require(sc.region.radius_m > 0.0, "region.radius_m", "must be > 0");
    }
  }

  if (const auto* traffic = rd.object(root, "traffic")) {
    if (rd.number(*traffic, "traffic.payload_bits", &sc.traffic.payload_bits)) {
      rd.require(sc.traffic.payload_bits > 0.0, "traffic.payload_bits",
                 "must be > 0");
    }
    if (rd.number(*traffic, "traffic.bitrate_bps", &sc.traffic.bitrate_bps)) {
      rd.require(sc.traffic.bitrate_bps > 0.0, "traffic.bitrate_bps",
                 "must be > 0");
    }
    if (!traffic->contains("aggregation")) {
      errs.push_back("traffic.aggregation: missing");
    } else if (!(*traffic)["aggregation"].is_string()) {
      errs.push_back("traffic.aggregation: must be a string");
    } else {
      const std::string agg = (*traffic)["aggregation"].get<std::string>();
      if (agg == "perfect") {
        sc.traffic.aggregation = Aggregation::Perfect;
      } else if (agg == "none") {
        sc.traffic.aggregation = Aggregation::None;
      } else {
        errs.push_back("traffic.aggregation: must be 'perfect' or 'none'");
      }
    }
  }

  if (rd.number(root, "terrestrial_alpha", &sc.terrestrial_alpha)) {
    rd.require(sc.terrestrial_alpha >= 2.0, "terrestrial_alpha",
               "must be >= 2");
  }

  const bool region_ok = sc.region.radius_m > 0.0;
  if (!root.contains("terminals")) {
    errs.push_back("terminals: missing");
  } else if (root["terminals"].is_array()) {
    std::set<std::string> seen;
    int i = 0;
    for (const auto& t : root["terminals"]) {
      const std::string base = "terminals[" + std::to_string(i) + "]";
      GroundTerminal term;
      if (!t.is_object()) {
        errs.push_back(base + ": must be an object");
        ++i;
        continue;
      }
      if (!t.contains("id") || !t["id"].is_string() ||
          t["id"].get<std::string>().empty()) {
        errs.push_back(base + ".id: must be a non-empty string");
      } else {
        term.id = t["id"].get<std::string>();
        if (!seen.insert(term.id).second) {
          errs.push_back(base + ".id: duplicate id '" + term.id + "'");
        }
      }
      rd.number(t, base + ".x", &term.position.x_m);
      rd.number(t, base + ".y", &term.position.y_m);
      if (region_ok &&
          planar_distance_m(term.position, sc.region.center) >
              sc.region.radius_m * (1.0 + 1e-12) + 1e-9) {
        errs.push_back(base + ": outside the scenario region");
      }
      sc.terminals.push_back(std::move(term));
      ++i;
    }
  } else if (root["terminals"].is_object()) {
    const auto& t = root["terminals"];
    std::int64_t count = 0;
    std::int64_t gen_seed = 0;
    const bool count_ok = rd.integer(t, "terminals.count", &count);
    const bool seed_ok = rd.integer(t, "terminals.seed", &gen_seed);
    if (count_ok) rd.require(count >= 0, "terminals.count", "must be >= 0");
    if (count_ok && seed_ok && count >= 0 && region_ok) {
      sc.terminals = generate_terminals(static_cast<int>(count), sc.region,
                                        static_cast<std::uint64_t>(gen_seed));
    }
  } else {
    errs.push_back("terminals: must be an array or {count, seed}");
  }

  if (!errs.empty()) throw make_error(std::move(errs));
  return sc;
}

DeploymentScenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario_json(ss.str(), path);
}

}  // namespace aeroplan
