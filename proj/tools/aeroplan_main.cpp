// aeroplan: deterministic planning CLI for aerial LTE base-station
// deployments. Exit codes: 0 success, 1 usage/validation error,
// 2 infeasible result, 3 I/O error.

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aeroplan/channel.hpp"
#include "aeroplan/energy.hpp"
#include "aeroplan/numfmt.hpp"
#include "aeroplan/planner.hpp"
#include "aeroplan/rem.hpp"
#include "aeroplan/rng.hpp"
#include "aeroplan/scenario.hpp"

namespace fs = std::filesystem;
using namespace aeroplan;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitIo = 3;

struct CliError {
  int code;
  std::string message;
};

// Writes the fully composed result, to --out or standard output. Output
// is only ever written after the computation succeeded, so failing
// invocations leave nothing behind at --out.
void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError{kExitIo, "cannot open output file: " + out_path};
  out << content;
  out.flush();
  if (!out.good()) {
    out.close();
    std::remove(out_path.c_str());
    throw CliError{kExitIo, "write failed: " + out_path};
  }
}

fs::path executable_dir() {
  char buf[4096];
  const ssize_t n = ::readlink("/proc/self/exe", buf, sizeof(buf) - 1);
  if (n <= 0) return fs::current_path();
  buf[n] = '\0';
  return fs::path(buf).parent_path();
}

bool is_preset_name(const std::string& s) {
  return s == "suburban" || s == "urban" || s == "dense-urban" ||
         s == "high-rise";
}

// --env takes a preset name (resolved against $AEROPLAN_PRESETS, the
// binary's directory, its parent, then ./presets) or a JSON file path.
EnvironmentParams resolve_environment(const std::string& arg) {
  std::string path = arg;
  if (is_preset_name(arg)) {
    std::vector<fs::path> candidates;
    if (const char* dir = std::getenv("AEROPLAN_PRESETS")) {
      candidates.push_back(fs::path(dir) / (arg + ".json"));
    }
    const fs::path exe = executable_dir();
    candidates.push_back(exe / "presets" / (arg + ".json"));
    candidates.push_back(exe.parent_path() / "presets" / (arg + ".json"));
    candidates.push_back(fs::path("presets") / (arg + ".json"));
    path.clear();
    for (const auto& c : candidates) {
      std::error_code ec;
      if (fs::exists(c, ec)) {
        path = c.string();
        break;
      }
    }
    if (path.empty()) {
      throw CliError{kExitIo, "preset '" + arg + "' not found (searched " +
                                  "$AEROPLAN_PRESETS and presets/ next to the "
                                  "binary and the working directory)"};
    }
  }
  std::ifstream in(path);
  if (!in) throw CliError{kExitIo, "cannot open environment file: " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_environment_json(ss.str(), path);
  } catch (const std::exception& e) {
    throw CliError{kExitUsage, e.what()};
  }
}

DeploymentScenario load_scenario_checked(const std::string& path) {
  try {
    return load_scenario(path);
  } catch (const ScenarioValidationError& e) {
    std::string msg = "invalid scenario " + path + ":";
    for (const auto& v : e.violations) msg += "\n  " + v;
    throw CliError{kExitUsage, msg};
  } catch (const std::runtime_error& e) {
    throw CliError{kExitIo, e.what()};
  }
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

// ---- subcommand bodies ----------------------------------------------------

struct PlanAltitudeArgs {
  double plmax = 0.0, freq = 0.0, hmin = 0.0, hmax = 0.0, tol = 0.5;
  std::string env, out;
};

int cmd_plan_altitude(const PlanAltitudeArgs& a) {
  const EnvironmentParams env = resolve_environment(a.env);
  RadioConfig radio;
  radio.carrier_freq_hz = a.freq;
  radio.max_path_loss_db = a.plmax;
  AltitudeSolution sol;
  try {
    sol = optimal_altitude(radio, env, a.hmin, a.hmax, a.tol);
  } catch (const std::domain_error& e) {
    throw CliError{kExitUsage, e.what()};
  }
  if (!sol.feasible) {
    throw CliError{kExitInfeasible,
                   "infeasible: no altitude in the bracket meets the path-loss "
                   "budget " +
                       format_sig6(a.plmax) + " dB"};
  }
  std::ostringstream os;
  os << "{\"altitude_m\":" << format_sig6(sol.altitude_m)
     << ",\"radius_m\":" << format_sig6(sol.radius_m)
     << ",\"feasible\":" << bool_json(sol.feasible)
     << ",\"evaluations\":" << sol.search_trace.size() << "}\n";
  emit(a.out, os.str());
  return kExitOk;
}

struct CoverageArgs {
  double altitude = 0.0, plmax = 0.0, freq = 0.0, tol = 0.5;
  std::string env, out;
};

int cmd_coverage(const CoverageArgs& a) {
  const EnvironmentParams env = resolve_environment(a.env);
  RadioConfig radio;
  radio.carrier_freq_hz = a.freq;
  radio.max_path_loss_db = a.plmax;
  CoverageResult res;
  try {
    res = coverage_radius_m(a.altitude, radio, env, a.tol);
  } catch (const std::domain_error& e) {
    throw CliError{kExitUsage, e.what()};
  }
  if (!res.feasible) {
    throw CliError{kExitInfeasible,
                   "infeasible: mean path loss at the sub-platform point is " +
                       format_sig6(res.limiting_path_loss_db) +
                       " dB, above the budget " + format_sig6(a.plmax) + " dB"};
  }
  std::ostringstream os;
  os << "{\"radius_m\":" << format_sig6(res.radius_m)
     << ",\"limiting_path_loss_db\":" << format_sig6(res.limiting_path_loss_db)
     << ",\"feasible\":" << bool_json(res.feasible) << "}\n";
  emit(a.out, os.str());
  return kExitOk;
}

struct ClusterArgs {
  std::string scenario, out;
  int kmin = 1, kmax = 0, kstep = 1;
  std::uint64_t seed = 0;
};

int cmd_cluster_optimize(const ClusterArgs& a) {
  const DeploymentScenario sc = load_scenario_checked(a.scenario);
  const int n = static_cast<int>(sc.terminals.size());
  if (a.kmin < 1 || a.kmax < a.kmin || a.kmax > n || a.kstep < 1) {
    throw CliError{kExitUsage,
                   "invalid k range: need 1 <= kmin <= kmax <= " +
                       std::to_string(n) + " and kstep >= 1"};
  }
  std::vector<int> k_range;
  for (int k = a.kmin; k <= a.kmax; k += a.kstep) k_range.push_back(k);

  ClusterScanResult scan;
  DirectEnergyResult direct;
  try {
    scan = optimal_cluster_count(sc.terminals, sc.lap_altitude_m,
                                 sc.lap_position, sc.radio, sc.env, sc.traffic,
                                 sc.terrestrial_alpha, k_range, a.seed);
    direct = direct_energy_j(sc.terminals, sc.lap_altitude_m, sc.lap_position,
                             sc.radio, sc.env, sc.traffic);
  } catch (const std::domain_error& e) {
    throw CliError{kExitUsage, e.what()};
  }

  std::ostringstream os;
  os << "{\"k_best\":" << scan.k_best
     << ",\"total_energy_j\":" << format_sig6(scan.best.total_energy_j)
     << ",\"member_energy_j\":" << format_sig6(scan.best.member_energy_j)
     << ",\"head_energy_j\":" << format_sig6(scan.best.head_energy_j)
     << ",\"direct_energy_j\":" << format_sig6(direct.energy_j)
     << ",\"outage_count\":" << scan.best.outage_ids.size() << ",\"scan\":[";
  for (std::size_t i = 0; i < scan.trace.size(); ++i) {
    if (i) os << ',';
    os << '[' << scan.trace[i].k << ','
       << format_sig6(scan.trace[i].total_energy_j) << ']';
  }
  os << "]}\n";
  emit(a.out, os.str());
  return kExitOk;
}

struct RelayArgs {
  std::string scenario, out;
  double budget = 0.0;
};

int cmd_relay(const RelayArgs& a) {
  const DeploymentScenario sc = load_scenario_checked(a.scenario);
  RelayResult res;
  try {
    res = relay_coverage(sc.terminals, sc.lap_altitude_m, sc.lap_position,
                         sc.radio, sc.env, a.budget, sc.terrestrial_alpha);
  } catch (const std::domain_error& e) {
    throw CliError{kExitUsage, e.what()};
  }
  std::ostringstream os;
  os << "id,status,witness\n";
  for (const auto& t : sc.terminals) {
    os << t.id << ',';
    if (res.directly_covered.count(t.id)) {
      os << "direct,";
    } else if (res.relay_covered.count(t.id)) {
      os << "relay," << res.witness.at(t.id);
    } else {
      os << "uncovered,";
    }
    os << '\n';
  }
  emit(a.out, os.str());
  return kExitOk;
}

struct SimulateArgs {
  std::string scenario, out, report;
  int runs = 0, threads = 1, report_run = 0;
  std::uint64_t seed = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  const DeploymentScenario sc = load_scenario_checked(a.scenario);
  if (a.runs < 1) throw CliError{kExitUsage, "--runs must be >= 1"};
  if (a.threads < 1) throw CliError{kExitUsage, "--threads must be >= 1"};
  if (a.report_run < 0 || a.report_run >= a.runs) {
    throw CliError{kExitUsage, "--report-run must be in [0, runs)"};
  }

  const MonteCarloResult mc =
      run_monte_carlo_detailed(sc, a.runs, a.seed, a.threads);

  const MonteCarloSummary& s = mc.summary;
  std::ostringstream js;
  js << "{\"runs\":" << s.runs
     << ",\"coverage_mean\":" << format_sig6(s.coverage_mean)
     << ",\"coverage_std\":" << format_sig6(s.coverage_std)
     << ",\"coverage_ci95\":" << format_sig6(s.coverage_ci95)
     << ",\"rsrp_mean_dbm\":" << format_sig6(s.rsrp_mean_dbm)
     << ",\"seed\":" << s.seed << "}\n";

  if (!a.out.empty()) {
    std::ostringstream csv;
    csv << "run,coverage_fraction,mean_rsrp_dbm\n";
    for (int i = 0; i < a.runs; ++i) {
      csv << i << ',' << format_sig6(mc.per_run[i].coverage_fraction) << ','
          << format_sig6(mc.per_run[i].mean_rsrp_dbm) << '\n';
    }
    emit(a.out, csv.str());
  }
  if (!a.report.empty()) {
    const EvaluationReport rep =
        evaluate_deployment(sc, substream_seed(a.seed, a.report_run));
    emit(a.report, report_csv(rep));
  }
  std::cout << js.str();
  return kExitOk;
}

struct RemIngestArgs {
  std::string store, in, out;
};

int cmd_rem_ingest(const RemIngestArgs& a) {
  try {
    RemStore store(a.store);
    const IngestStats st = store.ingest_csv(a.in);
    std::ostringstream os;
    os << "{\"accepted\":" << st.accepted << ",\"skipped\":" << st.skipped
       << "}\n";
    emit(a.out, os.str());
  } catch (const std::runtime_error& e) {
    throw CliError{kExitIo, e.what()};
  }
  return kExitOk;
}

struct RemChannelsArgs {
  std::string store, cells, out;
};

std::vector<CellId> parse_cells(const std::string& spec) {
  std::vector<CellId> cells;
  if (spec.empty()) return cells;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      throw CliError{kExitUsage, "bad --cells entry '" + item +
                                     "' (expected x:y pairs, e.g. 0:0,1:2)"};
    }
    try {
      cells.push_back({std::stoll(item.substr(0, colon)),
                       std::stoll(item.substr(colon + 1))});
    } catch (const std::exception&) {
      throw CliError{kExitUsage, "bad --cells entry '" + item + "'"};
    }
  }
  return cells;
}

int cmd_rem_channels(const RemChannelsArgs& a) {
  const std::vector<CellId> cells = parse_cells(a.cells);
  try {
    RemStore store(a.store);
    emit(a.out, priority_list_csv(store.prioritized_channels(cells)));
  } catch (const CliError&) {
    throw;
  } catch (const std::runtime_error& e) {
    throw CliError{kExitIo, e.what()};
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"aeroplan: aerial LTE base-station deployment planner"};
  app.require_subcommand(1);

  PlanAltitudeArgs pa;
  auto* plan = app.add_subcommand(
      "plan-altitude", "Optimize platform altitude for maximum coverage");
  plan->add_option("--plmax", pa.plmax, "Maximum allowed path loss (dB)")
      ->required();
  plan->add_option("--freq", pa.freq, "Carrier frequency (Hz)")->required();
  plan->add_option("--env", pa.env, "Environment preset name or JSON file")
      ->required();
  plan->add_option("--hmin", pa.hmin, "Lower altitude bound (m)")->required();
  plan->add_option("--hmax", pa.hmax, "Upper altitude bound (m)")->required();
  plan->add_option("--tol", pa.tol, "Search tolerance (m)");
  plan->add_option("--out", pa.out, "Output path (default: stdout)");

  CoverageArgs ca;
  auto* cov = app.add_subcommand(
      "coverage", "Coverage radius at a fixed platform altitude");
  cov->add_option("--altitude", ca.altitude, "Platform altitude (m)")
      ->required();
  cov->add_option("--plmax", ca.plmax, "Maximum allowed path loss (dB)")
      ->required();
  cov->add_option("--freq", ca.freq, "Carrier frequency (Hz)")->required();
  cov->add_option("--env", ca.env, "Environment preset name or JSON file")
      ->required();
  cov->add_option("--tol", ca.tol, "Search tolerance (m)");
  cov->add_option("--out", ca.out, "Output path (default: stdout)");

  ClusterArgs cl;
  auto* clus = app.add_subcommand(
      "cluster-optimize", "Scan cluster counts for minimum uplink energy");
  clus->add_option("--scenario", cl.scenario, "Scenario JSON file")->required();
  clus->add_option("--kmin", cl.kmin, "Smallest cluster count")->required();
  clus->add_option("--kmax", cl.kmax, "Largest cluster count")->required();
  clus->add_option("--kstep", cl.kstep, "Cluster count step");
  clus->add_option("--seed", cl.seed, "Clustering seed")->required();
  clus->add_option("--out", cl.out, "Output path (default: stdout)");

  RelayArgs ra;
  auto* rel = app.add_subcommand(
      "relay", "One-hop relay coverage classification per terminal");
  rel->add_option("--scenario", ra.scenario, "Scenario JSON file")->required();
  rel->add_option("--budget", ra.budget, "Relay hop path-loss budget (dB)")
      ->required();
  rel->add_option("--out", ra.out, "Output path (default: stdout)");

  SimulateArgs sa;
  auto* sim = app.add_subcommand(
      "simulate", "Seeded Monte-Carlo evaluation of a scenario");
  sim->add_option("--scenario", sa.scenario, "Scenario JSON file")->required();
  sim->add_option("--runs", sa.runs, "Number of Monte-Carlo runs")->required();
  sim->add_option("--seed", sa.seed, "Master seed (required; no wall-clock)")
      ->required();
  sim->add_option("--threads", sa.threads, "Worker threads (default 1)");
  sim->add_option("--out", sa.out, "Per-run CSV output path");
  sim->add_option("--report", sa.report, "Per-terminal report CSV path");
  sim->add_option("--report-run", sa.report_run,
                  "Run index for --report (default 0)");

  RemIngestArgs ri;
  auto* ringest = app.add_subcommand(
      "rem-ingest", "Append measurement records to a REM store");
  ringest->add_option("--store", ri.store, "REM store CSV path")->required();
  ringest->add_option("--in", ri.in, "Input records CSV")->required();
  ringest->add_option("--out", ri.out, "Output path (default: stdout)");

  RemChannelsArgs rc;
  auto* rchan = app.add_subcommand(
      "rem-channels", "Prioritized channel list from a REM store");
  rchan->add_option("--store", rc.store, "REM store CSV path")->required();
  rchan->add_option("--cells", rc.cells,
                    "Cell filter as x:y pairs, comma separated (default: all)");
  rchan->add_option("--out", rc.out, "Output path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run 'aeroplan --help' for usage\n";
    return kExitUsage;
  }

  try {
    if (plan->parsed()) return cmd_plan_altitude(pa);
    if (cov->parsed()) return cmd_coverage(ca);
    if (clus->parsed()) return cmd_cluster_optimize(cl);
    if (rel->parsed()) return cmd_relay(ra);
    if (sim->parsed()) return cmd_simulate(sa);
    if (ringest->parsed()) return cmd_rem_ingest(ri);
    if (rchan->parsed()) return cmd_rem_channels(rc);
  } catch (const CliError& e) {
    std::cerr << e.message << "\n";
    return e.code;
  } catch (const std::domain_error& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}
