#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dcf {

// Channel and frame timing. Defaults are the 1 Mbit/s FHSS parameter set;
// all durations are integer microseconds.
struct PhyParams {
  std::int64_t payload_bits = 8184;
  std::int64_t data_us = 8200;
  std::int64_t channel_rate_bps = 1'000'000;
  std::int64_t slot_us = 50;
  std::int64_t difs_us = 128;
  std::int64_t sifs_us = 28;
  std::int64_t ack_timeout_us = 300;
  std::int64_t rts_us = 350;
  std::int64_t cts_us = 350;
  // No separate ACK duration is published for this parameter set; the
  // timeout value doubles as the on-air ACK time and can be overridden.
  std::int64_t ack_us = 300;

  void validate() const {
    auto positive = [](std::int64_t v, const char* field) {
      if (v <= 0) throw std::invalid_argument(std::string("PhyParams.") + field +
                                              ": must be > 0");
    };
    positive(payload_bits, "payload_bits");
    positive(data_us, "data_us");
    positive(channel_rate_bps, "channel_rate_bps");
    positive(slot_us, "slot_us");
    positive(difs_us, "difs_us");
    positive(sifs_us, "sifs_us");
    positive(ack_timeout_us, "ack_timeout_us");
    positive(rts_us, "rts_us");
    positive(cts_us, "cts_us");
    positive(ack_us, "ack_us");
    if (sifs_us >= difs_us)
      throw std::invalid_argument("PhyParams.sifs_us: must be < difs_us");
  }
};

// Channel occupancy of one successful four-way exchange:
// RTS + SIFS + CTS + SIFS + Data + SIFS + ACK + DIFS.
inline std::int64_t tx_time_success_us(const PhyParams& phy) {
  return phy.rts_us + phy.sifs_us + phy.cts_us + phy.sifs_us + phy.data_us +
         phy.sifs_us + phy.ack_us + phy.difs_us;
}

// Channel occupancy of one collided exchange: RTS + DIFS.
inline std::int64_t tx_time_collision_us(const PhyParams& phy) {
  return phy.rts_us + phy.difs_us;
}

}  // namespace dcf
