#include "aeroplan/energy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "aeroplan/rng.hpp"

namespace aeroplan {

namespace {

double round_seconds(const TrafficModel& traffic) {
  if (!(traffic.payload_bits > 0.0)) {
    throw std::domain_error("payload_bits must be > 0");
  }
  if (!(traffic.bitrate_bps > 0.0)) {
    throw std::domain_error("bitrate_bps must be > 0");
  }
  return traffic.payload_bits / traffic.bitrate_bps;
}

// Indices of `terminals` sorted by id. All clustering decisions run in
// this canonical order so results do not depend on input order.
std::vector<int> canonical_order(const std::vector<GroundTerminal>& terminals) {
  std::vector<int> order(terminals.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return terminals[a].id < terminals[b].id;
  });
  return order;
}

double dist2(const PlanarPoint& a, const PlanarPoint& b) {
  const double dx = a.x_m - b.x_m;
  const double dy = a.y_m - b.y_m;
  return dx * dx + dy * dy;
}

struct Clustering {
  std::vector<int> heads;   // canonical indices, one per cluster
  std::vector<int> assign;  // canonical index -> cluster
};

// Farthest-point seeding followed by capped Lloyd iterations on the
// canonicalized points; each centroid is snapped back to a real
// terminal at the end and the final assignment is recomputed against
// the snapped heads.
Clustering cluster_terminals(const std::vector<PlanarPoint>& pts, int k,
                             std::uint64_t seed) {
  const int n = static_cast<int>(pts.size());
  SplitMix64 rng(seed);

  std::vector<int> centers;
  centers.reserve(k);
  centers.push_back(static_cast<int>(rng.next_u64() % n));
  std::vector<double> d2(n);
  for (int i = 0; i < n; ++i) d2[i] = dist2(pts[i], pts[centers[0]]);
  while (static_cast<int>(centers.size()) < k) {
    int far = 0;
    for (int i = 1; i < n; ++i) {
      if (d2[i] > d2[far]) far = i;  // ties keep the lowest index
    }
    centers.push_back(far);
    for (int i = 0; i < n; ++i) {
      d2[i] = std::min(d2[i], dist2(pts[i], pts[far]));
    }
  }

  std::vector<PlanarPoint> cpos(k);
  for (int j = 0; j < k; ++j) cpos[j] = pts[centers[j]];
  std::vector<int> assign(n, 0);
  for (int it = 0; it < 50; ++it) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int bj = 0;
      double bd = dist2(pts[i], cpos[0]);
      for (int j = 1; j < k; ++j) {
        const double dd = dist2(pts[i], cpos[j]);
        if (dd < bd) {
          bd = dd;
          bj = j;
        }
      }
      if (bj != assign[i]) {
        assign[i] = bj;
        changed = true;
      }
    }
    std::vector<double> sx(k, 0.0), sy(k, 0.0);
    std::vector<int> cnt(k, 0);
    for (int i = 0; i < n; ++i) {
      sx[assign[i]] += pts[i].x_m;
      sy[assign[i]] += pts[i].y_m;
      ++cnt[assign[i]];
    }
    for (int j = 0; j < k; ++j) {
      if (cnt[j] > 0) cpos[j] = {sx[j] / cnt[j], sy[j] / cnt[j]};
      // empty clusters keep their previous position
    }
    if (!changed) break;
  }

  // Snap each centroid to an actual terminal: the nearest member of its
  // own cluster, or the nearest unclaimed terminal for empty clusters.
  std::vector<char> claimed(n, 0);
  std::vector<int> heads(k, -1);
  for (int j = 0; j < k; ++j) {
    int best = -1;
    double bd = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      if (assign[i] != j) continue;
      const double dd = dist2(pts[i], cpos[j]);
      if (dd < bd) {
        bd = dd;
        best = i;
      }
    }
    if (best < 0) {
      for (int i = 0; i < n; ++i) {
        if (claimed[i]) continue;
        const double dd = dist2(pts[i], cpos[j]);
        if (dd < bd) {
          bd = dd;
          best = i;
        }
      }
    }
    heads[j] = best;
    claimed[best] = 1;
  }

  Clustering out;
  out.heads = heads;
  out.assign.assign(n, -1);
  for (int j = 0; j < k; ++j) out.assign[heads[j]] = j;
  for (int i = 0; i < n; ++i) {
    if (out.assign[i] >= 0) continue;  // heads stay assigned to themselves
    int bj = 0;
    double bd = dist2(pts[i], pts[heads[0]]);
    for (int j = 1; j < k; ++j) {
      const double dd = dist2(pts[i], pts[heads[j]]);
      if (dd < bd) {
        bd = dd;
        bj = j;
      }
    }
    out.assign[i] = bj;
  }
  return out;
}

}  // namespace

double required_tx_power_dbm(double path_loss_db, const RadioConfig& radio) {
  return radio.rx_sensitivity_dbm + path_loss_db - radio.tx_gain_dbi -
         radio.rx_gain_dbi;
}

DirectEnergyResult direct_energy_j(const std::vector<GroundTerminal>& terminals,
                                   double lap_altitude_m,
                                   const PlanarPoint& lap_position,
                                   const RadioConfig& radio,
                                   const EnvironmentParams& env,
                                   const TrafficModel& traffic) {
  const double t_round = round_seconds(traffic);
  DirectEnergyResult out;
  for (const auto& term : terminals) {
    const double range = planar_distance_m(term.position, lap_position);
    const double loss =
        mean_path_loss_db(lap_altitude_m, range, radio, env).total_mean_db;
    const double p_req = required_tx_power_dbm(loss, radio);
    if (exceeds_power_limit(p_req, radio)) {
      out.outage_ids.push_back(term.id);
      continue;
    }
    out.energy_j += dbm_to_watts(p_req) * t_round;
  }
  std::sort(out.outage_ids.begin(), out.outage_ids.end());
  return out;
}

ClusterPlan clustered_energy_j(const std::vector<GroundTerminal>& terminals,
                               double lap_altitude_m,
                               const PlanarPoint& lap_position,
                               const RadioConfig& radio,
                               const EnvironmentParams& env,
                               const TrafficModel& traffic, double alpha,
                               int k, std::uint64_t seed) {
  const int n = static_cast<int>(terminals.size());
  if (k < 1 || k > n) throw std::domain_error("k must be in [1, |terminals|]");
  const double t_round = round_seconds(traffic);

  const std::vector<int> order = canonical_order(terminals);
  std::vector<PlanarPoint> pts(n);
  for (int i = 0; i < n; ++i) pts[i] = terminals[order[i]].position;

  const Clustering cl = cluster_terminals(pts, k, seed);

  ClusterPlan plan;
  plan.k = k;
  for (int j = 0; j < k; ++j) {
    plan.head_ids.push_back(terminals[order[cl.heads[j]]].id);
    plan.head_positions.push_back(pts[cl.heads[j]]);
  }
  std::vector<int> cluster_size(k, 0);
  for (int i = 0; i < n; ++i) ++cluster_size[cl.assign[i]];

  std::vector<char> is_head(n, 0);
  for (int j = 0; j < k; ++j) is_head[cl.heads[j]] = 1;

  for (int i = 0; i < n; ++i) {
    const std::string& id = terminals[order[i]].id;
    const int j = cl.assign[i];
    plan.assignment[id] = plan.head_ids[j];
    if (is_head[i]) continue;
    const double hop = planar_distance_m(pts[i], pts[cl.heads[j]]);
    const double loss =
        terrestrial_path_loss_db(hop, alpha, radio.carrier_freq_hz);
    const double p_req = required_tx_power_dbm(loss, radio);
    if (exceeds_power_limit(p_req, radio)) {
      plan.outage_ids.push_back(id);
      continue;
    }
    plan.member_energy_j += dbm_to_watts(p_req) * t_round;
  }

  for (int j = 0; j < k; ++j) {
    const double range = planar_distance_m(pts[cl.heads[j]], lap_position);
    const double loss =
        mean_path_loss_db(lap_altitude_m, range, radio, env).total_mean_db;
    const double p_req = required_tx_power_dbm(loss, radio);
    if (exceeds_power_limit(p_req, radio)) {
      plan.outage_ids.push_back(plan.head_ids[j]);
      continue;
    }
    const double rounds =
        traffic.aggregation == Aggregation::Perfect ? 1.0 : cluster_size[j];
    plan.head_energy_j += dbm_to_watts(p_req) * t_round * rounds;
  }

  plan.total_energy_j = plan.member_energy_j + plan.head_energy_j;
  std::sort(plan.outage_ids.begin(), plan.outage_ids.end());
  return plan;
}

ClusterScanResult optimal_cluster_count(
    const std::vector<GroundTerminal>& terminals, double lap_altitude_m,
    const PlanarPoint& lap_position, const RadioConfig& radio,
    const EnvironmentParams& env, const TrafficModel& traffic, double alpha,
    const std::vector<int>& k_range, std::uint64_t seed) {
  if (k_range.empty()) throw std::domain_error("k_range must be non-empty");

  ClusterScanResult out;
  bool have_best = false;
  for (int k : k_range) {
    ClusterPlan plan = clustered_energy_j(terminals, lap_altitude_m,
                                          lap_position, radio, env, traffic,
                                          alpha, k, seed);
    out.trace.push_back({k, plan.total_energy_j});
    const bool better =
        !have_best || plan.total_energy_j < out.best.total_energy_j ||
        (plan.total_energy_j == out.best.total_energy_j && k < out.k_best);
    if (better) {
      out.k_best = k;
      out.best = std::move(plan);
      have_best = true;
    }
  }
  return out;
}

RelayResult relay_coverage(const std::vector<GroundTerminal>& terminals,
                           double lap_altitude_m,
                           const PlanarPoint& lap_position,
                           const RadioConfig& radio,
                           const EnvironmentParams& env,
                           double relay_budget_db, double alpha) {
  if (!(relay_budget_db >= 0.0)) {
    throw std::domain_error("relay_budget_db must be >= 0");
  }
  RelayResult res;
  std::vector<int> covered_idx;
  for (int i = 0; i < static_cast<int>(terminals.size()); ++i) {
    const double range =
        planar_distance_m(terminals[i].position, lap_position);
    const double loss =
        mean_path_loss_db(lap_altitude_m, range, radio, env).total_mean_db;
    if (loss <= radio.max_path_loss_db) {
      res.directly_covered.insert(terminals[i].id);
      covered_idx.push_back(i);
    }
  }
  for (int i = 0; i < static_cast<int>(terminals.size()); ++i) {
    if (res.directly_covered.count(terminals[i].id)) continue;
    const std::string* best_witness = nullptr;
    double best_loss = 0.0;
    for (int c : covered_idx) {
      const double hop =
          planar_distance_m(terminals[i].position, terminals[c].position);
      const double loss =
          terrestrial_path_loss_db(hop, alpha, radio.carrier_freq_hz);
      if (loss <= relay_budget_db &&
          (best_witness == nullptr || loss < best_loss)) {
        best_witness = &terminals[c].id;
        best_loss = loss;
      }
    }
    if (best_witness != nullptr) {
      res.relay_covered.insert(terminals[i].id);
      res.witness[terminals[i].id] = *best_witness;
    } else {
      res.uncovered.insert(terminals[i].id);
    }
  }
  return res;
}

}  // namespace aeroplan
