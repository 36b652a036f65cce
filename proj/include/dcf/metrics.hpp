#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dcf/phy.hpp"

namespace dcf {

// Channel-time ledger. The four duration buckets tile the measured span
// exactly: every channel event is a success, a collision, an idle slot with
// at least one station counting down (backoff) or an idle slot with nothing
// pending anywhere (empty).
struct DelayLedger {
  std::int64_t total_tx_time_us = 0;         // n_transmissions * T_s
  std::int64_t total_collision_time_us = 0;  // n_collisions * T_c
  std::int64_t total_backoff_time_us = 0;
  std::int64_t total_empty_slot_time_us = 0;
  std::int64_t n_transmissions = 0;
  std::int64_t n_collisions = 0;
};

std::int64_t total_delay_us(const DelayLedger& ledger);

// Total delay divided by delivered transmissions; throws std::domain_error
// when nothing was transmitted (the metric is undefined, not zero).
double avg_transmission_delay_us(const DelayLedger& ledger);

// Delivered payload over channel capacity for the same span, in [0, 1].
double normalized_throughput(std::int64_t delivered_payload_bits,
                             std::int64_t span_us,
                             std::int64_t channel_rate_bps);

struct RunMetrics {
  double normalized_throughput = 0.0;
  // Channel-time delay per delivered packet (the ledger reading).
  std::optional<double> avg_tx_delay_us;
  // Arrival-to-ACK sojourn averaged over delivered packets. Reported next to
  // the ledger reading because the two answer different questions.
  std::optional<double> avg_queueing_delay_us;
  double collision_rate = 0.0;  // failed attempts / attempts
  double offered_load = 0.0;
  DelayLedger ledger;

  // Measurement window.
  std::int64_t span_us = 0;
  std::int64_t delivered_bits = 0;
  std::int64_t attempts = 0;

  // Whole-run packet accounting (conservation holds over these, not over the
  // warmup-clipped window).
  std::int64_t arrivals = 0;
  std::int64_t deliveries = 0;
  std::int64_t drops = 0;
  std::int64_t backlog_at_end = 0;

  std::vector<std::int64_t> delay_samples_us;  // filled only when retained
};

}  // namespace dcf
