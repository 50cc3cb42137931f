#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aeroplan/channel.hpp"
#include "aeroplan/energy.hpp"
#include "aeroplan/geometry.hpp"

namespace aeroplan {

struct Region {
  PlanarPoint center;
  double radius_m = 0.0;
};

// One deployment under evaluation: platform placement, radio, channel
// environment, terminal set and traffic. Immutable during evaluation.
struct DeploymentScenario {
  PlanarPoint lap_position;
  double lap_altitude_m = 0.0;
  RadioConfig radio;
  EnvironmentParams env;
  Region region;
  std::vector<GroundTerminal> terminals;
  TrafficModel traffic;
  double terrestrial_alpha = 3.5;
};

struct TerminalEvaluation {
  std::string id;
  double ground_range_m = 0.0;
  double elevation_deg = 0.0;
  double sampled_pl_db = 0.0;
  PropagationGroup group = PropagationGroup::LoS;
  double rsrp_dbm = 0.0;
  bool covered = false;
};

struct EvaluationReport {
  std::vector<TerminalEvaluation> rows;  // scenario terminal order
  double coverage_fraction = 0.0;
  double mean_rsrp_dbm = 0.0;  // NaN when the scenario has no terminals
  double direct_energy_j = 0.0;
  int outage_count = 0;
  bool zero_terminals = false;  // coverage reported as 1.0 when set
};

struct MonteCarloSummary {
  int runs = 0;
  double coverage_mean = 0.0;
  double coverage_std = 0.0;   // population standard deviation over runs
  double coverage_ci95 = 0.0;  // 1.96 * std / sqrt(runs)
  double rsrp_mean_dbm = 0.0;
  std::uint64_t seed = 0;
};

// n points uniform on the disc via polar sampling (r = R*sqrt(u),
// angle = 2*pi*v), ids "t0".."tN-1"; deterministic under seed.
std::vector<GroundTerminal> generate_terminals(int n, const Region& region,
                                               std::uint64_t seed);

// Samples each terminal's path loss once (in terminal-list order, one
// group draw plus one normal per terminal) and reports coverage, RSRP
// and the direct-uplink energy of the scenario.
EvaluationReport evaluate_deployment(const DeploymentScenario& scenario,
                                     std::uint64_t seed);

struct RunStatistic {
  double coverage_fraction = 0.0;
  double mean_rsrp_dbm = 0.0;
};

struct MonteCarloResult {
  MonteCarloSummary summary;
  std::vector<RunStatistic> per_run;  // indexed by run
};

// `runs` independent evaluations; run i draws from the substream seed
// substream_seed(seed, i). With n_threads > 1 runs execute concurrently
// but the reduction is a fixed-order fold over run indices, so the
// summary is bit-identical to sequential execution.
MonteCarloSummary run_monte_carlo(const DeploymentScenario& scenario, int runs,
                                  std::uint64_t seed, int n_threads = 1);

MonteCarloResult run_monte_carlo_detailed(const DeploymentScenario& scenario,
                                          int runs, std::uint64_t seed,
                                          int n_threads = 1);

// Report CSV with the exact header
// id,ground_range_m,elevation_deg,sampled_pl_db,group,rsrp_dbm,covered.
std::string report_csv(const EvaluationReport& report);

// Thrown by load_scenario when the file parses but violates the schema
// or an invariant; `violations` holds one dotted-field-path message per
// problem (all of them, not just the first).
struct ScenarioValidationError : std::runtime_error {
  explicit ScenarioValidationError(std::vector<std::string> violations_);
  std::vector<std::string> violations;
};

DeploymentScenario load_scenario(const std::string& path);
DeploymentScenario parse_scenario_json(const std::string& text,
                                       const std::string& origin);

}  // namespace aeroplan
