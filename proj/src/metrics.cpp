#include "dcf/metrics.hpp"

#include <stdexcept>

namespace dcf {

std::int64_t total_delay_us(const DelayLedger& ledger) {
  return ledger.total_tx_time_us + ledger.total_collision_time_us +
         ledger.total_backoff_time_us + ledger.total_empty_slot_time_us;
}

double avg_transmission_delay_us(const DelayLedger& ledger) {
  if (ledger.n_transmissions < 1)
    throw std::domain_error(
        "avg_transmission_delay_us: undefined with zero transmissions");
  return static_cast<double>(total_delay_us(ledger)) /
         static_cast<double>(ledger.n_transmissions);
}

double normalized_throughput(std::int64_t delivered_payload_bits,
                             std::int64_t span_us,
                             std::int64_t channel_rate_bps) {
  if (span_us <= 0) throw std::domain_error("normalized_throughput: span must be > 0");
  const double capacity_bits =
      static_cast<double>(channel_rate_bps) * static_cast<double>(span_us) * 1e-6;
  const double s = static_cast<double>(delivered_payload_bits) / capacity_bits;
  if (s > 1.0 + 1e-9)
    throw std::domain_error("normalized_throughput: exceeds channel capacity");
  return s;
}

}  // namespace dcf
