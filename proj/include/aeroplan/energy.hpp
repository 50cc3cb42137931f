#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "aeroplan/channel.hpp"
#include "aeroplan/geometry.hpp"

namespace aeroplan {

struct GroundTerminal {
  std::string id;  // unique within a scenario
  PlanarPoint position;
};

enum class Aggregation { Perfect, None };

struct TrafficModel {
  double payload_bits = 1e6;   // per terminal per round
  double bitrate_bps = 1e6;
  Aggregation aggregation = Aggregation::Perfect;
};

struct DirectEnergyResult {
  double energy_j = 0.0;
  std::vector<std::string> outage_ids;  // sorted
};

struct ClusterPlan {
  int k = 0;
  std::vector<std::string> head_ids;
  std::vector<PlanarPoint> head_positions;
  std::map<std::string, std::string> assignment;  // terminal id -> head id
  double member_energy_j = 0.0;
  double head_energy_j = 0.0;
  double total_energy_j = 0.0;
  std::vector<std::string> outage_ids;  // sorted
};

struct ClusterScanPoint {
  int k = 0;
  double total_energy_j = 0.0;
};

struct ClusterScanResult {
  int k_best = 0;
  ClusterPlan best;
  std::vector<ClusterScanPoint> trace;  // one entry per scanned k
};

struct RelayResult {
  std::set<std::string> directly_covered;
  std::set<std::string> relay_covered;
  std::set<std::string> uncovered;
  std::map<std::string, std::string> witness;  // relayed id -> covered neighbor
};

// Link-budget inversion: transmit power needed to arrive at the
// receiver sensitivity through the given loss. Values above
// radio.max_tx_power_dbm signal an outage; the caller decides policy.
double required_tx_power_dbm(double path_loss_db, const RadioConfig& radio);

inline bool exceeds_power_limit(double required_dbm, const RadioConfig& radio) {
  return required_dbm > radio.max_tx_power_dbm;
}

// Transmit-airtime energy of every terminal uplinking straight to the
// platform over the mean A2G loss. Outage terminals contribute zero.
DirectEnergyResult direct_energy_j(const std::vector<GroundTerminal>& terminals,
                                   double lap_altitude_m,
                                   const PlanarPoint& lap_position,
                                   const RadioConfig& radio,
                                   const EnvironmentParams& env,
                                   const TrafficModel& traffic);

// Partition the terminals into k clusters (farthest-point seeding, at
// most 50 Lloyd iterations, heads snapped to real terminals). Members
// pay the terrestrial hop to their head; heads pay the mean A2G loss.
// Under Perfect aggregation a head uplinks one payload per round; under
// None it uplinks cluster_size payloads. Deterministic under
// (terminal set, k, seed) and invariant to input order.
ClusterPlan clustered_energy_j(const std::vector<GroundTerminal>& terminals,
                               double lap_altitude_m,
                               const PlanarPoint& lap_position,
                               const RadioConfig& radio,
                               const EnvironmentParams& env,
                               const TrafficModel& traffic, double alpha,
                               int k, std::uint64_t seed);

// Exhaustive scan of k_range; argmin of total energy, ties toward
// smaller k. Every k is clustered with the same seed.
ClusterScanResult optimal_cluster_count(
    const std::vector<GroundTerminal>& terminals, double lap_altitude_m,
    const PlanarPoint& lap_position, const RadioConfig& radio,
    const EnvironmentParams& env, const TrafficModel& traffic, double alpha,
    const std::vector<int>& k_range, std::uint64_t seed);

// One-hop relay coverage: terminals within the mean-loss budget are
// covered directly; an uncovered terminal is relay-covered when some
// directly covered neighbor is reachable within relay_budget_db over
// the terrestrial model. Coverage analysis only, no energy accounting.
RelayResult relay_coverage(const std::vector<GroundTerminal>& terminals,
                           double lap_altitude_m,
                           const PlanarPoint& lap_position,
                           const RadioConfig& radio,
                           const EnvironmentParams& env,
                           double relay_budget_db, double alpha);

}  // namespace aeroplan
