#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "dcf/backoff.hpp"
#include "dcf/metrics.hpp"
#include "dcf/phy.hpp"
#include "dcf/rng.hpp"

namespace dcf {

struct TrafficModel {
  double arrival_rate_pps = 0.0;  // Poisson, per station
  int queue_capacity = 1;

  void validate() const;
};

struct SimConfig {
  int n_stations = 50;
  StrategyKind strategy = StrategyKind::Beb;
  BackoffParams backoff;
  PhyParams phy;
  TrafficModel traffic;
  std::int64_t sim_time_us = 100'000'000;
  std::int64_t warmup_us = 5'000'000;
  std::uint64_t seed = 1;
  // Test hook: keep the contention window fixed (counters still resample).
  bool freeze_cw = false;
  bool retain_delay_samples = false;

  void validate() const;

  double offered_load() const {
    return static_cast<double>(n_stations) * traffic.arrival_rate_pps *
           static_cast<double>(phy.payload_bits) /
           static_cast<double>(phy.channel_rate_bps);
  }

  // Per-station Poisson rate realizing a normalized offered load.
  static double arrival_rate_for_load(double load, int n_stations,
                                      const PhyParams& phy) {
    return load * static_cast<double>(phy.channel_rate_bps) /
           (static_cast<double>(n_stations) * static_cast<double>(phy.payload_bits));
  }
};

struct Station {
  int id = 0;
  BackoffState backoff;
  int counter = 0;                   // meaningful iff queue non-empty
  std::deque<std::int64_t> queue;    // arrival timestamps, head in service
  std::int64_t next_arrival_us = 0;  // kNoArrival when the stream is silent
  // Whole-run conservation counters.
  std::int64_t arrivals = 0;
  std::int64_t deliveries = 0;
  std::int64_t drops = 0;
};

struct SlotOutcome {
  enum class Kind { Idle, Success, Collision };
  Kind kind = Kind::Idle;
  std::int64_t elapsed_us = 0;
  int transmitter = -1;        // Success only
  std::vector<int> colliders;  // Collision only, size >= 2
  int contenders = 0;          // stations with a pending packet at slot start
};

inline constexpr std::int64_t kNoArrival = INT64_MAX;

// Slotted single-channel world: counters freeze during busy periods,
// decrement on idle slots, and a station transmits when its counter is zero.
class Simulator {
 public:
  explicit Simulator(const SimConfig& config);

  // Resolves exactly one channel event.
  SlotOutcome step();

  // Runs to sim_time_us, coalescing idle stretches; equivalent to repeated
  // step() calls (a test asserts this).
  void run_to_end();

  RunMetrics metrics() const;

  std::int64_t now_us() const { return now_us_; }
  std::vector<Station>& stations() { return stations_; }
  const SimConfig& config() const { return config_; }
  bool& coalesce_idle() { return coalesce_idle_; }

 private:
  std::int64_t idle_slots_until_next_event() const;
  SlotOutcome advance_idle(std::int64_t slots);
  SlotOutcome resolve_transmission(const std::vector<int>& transmitters,
                                   int contenders);
  void collect_transmitters(std::vector<int>& transmitters, int& contenders) const;
  void process_arrivals();
  void account_idle(std::int64_t slots, std::int64_t start_us, bool any_contender);
  void mark_window_start(std::int64_t event_start_us);

  SimConfig config_;
  Rng rng_;
  std::vector<Station> stations_;
  std::int64_t now_us_ = 0;
  std::int64_t t_success_us_ = 0;
  std::int64_t t_collision_us_ = 0;
  bool coalesce_idle_ = true;

  // Statistics window (events starting at or after warmup_us).
  std::int64_t stats_start_us_ = -1;
  DelayLedger ledger_;
  std::int64_t attempts_ = 0;
  std::int64_t failed_attempts_ = 0;
  std::int64_t delivered_in_window_ = 0;
  std::int64_t queueing_delay_sum_us_ = 0;
  std::vector<std::int64_t> delay_samples_us_;
  std::vector<int> scratch_transmitters_;
};

// Runs one experiment end to end and verifies the conservation identities.
RunMetrics run(const SimConfig& config);

}  // namespace dcf
